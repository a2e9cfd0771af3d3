#include "obstructo/opalg.hpp"

#include <algorithm>
#include <mutex>

#include "obstructo/error.hpp"

namespace obstructo {

namespace {

void accumulate(WordTerms& terms, const Word& w, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

WordTerms terms_of(std::initializer_list<std::pair<Word, ParamScalar>> list) {
  WordTerms out;
  for (const auto& [w, c] : list) accumulate(out, w, c);
  return out;
}

const ParamScalar kIHbar = ParamScalar::i() * ParamScalar::hbar();

}  // namespace

int OpAlgebra::index_of(const std::string& gen) const {
  auto it = std::find(generators.begin(), generators.end(), gen);
  return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
}

bool OpAlgebra::is_normal(const Word& w) const {
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k] > w[k + 1]) return false;
  for (const auto& pr : power_rules) {
    std::size_t run = 0;
    for (auto g : w) {
      run = (g == pr.gen) ? run + 1 : 0;
      if (run >= pr.power) return false;
    }
  }
  return true;
}

AlgebraPtr weyl_algebra() {
  static const AlgebraPtr alg = [] {
    auto a = std::make_shared<OpAlgebra>();
    a->name = "weyl";
    a->generators = {"Q", "P"};
    // P Q = Q P - i hbar
    a->swap_rules[{1, 0}] = terms_of({{Word{0, 1}, ParamScalar(1)}, {Word{}, -kIHbar}});
    return a;
  }();
  return alg;
}

AlgebraPtr su2_algebra() {
  static const AlgebraPtr alg = [] {
    auto a = std::make_shared<OpAlgebra>();
    a->name = "su2";
    a->generators = {"S1", "S2", "S3"};
    // S2 S1 = S1 S2 - i hbar S3;  S3 S1 = S1 S3 + i hbar S2;  S3 S2 = S2 S3 - i hbar S1
    a->swap_rules[{1, 0}] = terms_of({{Word{0, 1}, ParamScalar(1)}, {Word{2}, -kIHbar}});
    a->swap_rules[{2, 0}] = terms_of({{Word{0, 2}, ParamScalar(1)}, {Word{1}, kIHbar}});
    a->swap_rules[{2, 1}] = terms_of({{Word{1, 2}, ParamScalar(1)}, {Word{0}, -kIHbar}});
    return a;
  }();
  return alg;
}

AlgebraPtr e2_algebra() {
  static const AlgebraPtr alg = [] {
    auto a = std::make_shared<OpAlgebra>();
    a->name = "e2";
    a->generators = {"L", "C", "S"};
    // C L = L C - i hbar S;  S L = L S + i hbar C;  S C = C S;  S^2 = 1 - C^2
    a->swap_rules[{1, 0}] = terms_of({{Word{0, 1}, ParamScalar(1)}, {Word{2}, -kIHbar}});
    a->swap_rules[{2, 0}] = terms_of({{Word{0, 2}, ParamScalar(1)}, {Word{1}, kIHbar}});
    a->swap_rules[{2, 1}] = terms_of({{Word{1, 2}, ParamScalar(1)}});
    a->power_rules.push_back({2, 2, terms_of({{Word{}, ParamScalar(1)}, {Word{1, 1}, ParamScalar(-1)}})});
    return a;
  }();
  return alg;
}

AlgebraPtr make_algebra(const std::string& name) {
  if (name == "weyl") return weyl_algebra();
  if (name == "su2") return su2_algebra();
  if (name == "e2") return e2_algebra();
  throw InvalidArgument("unknown operator algebra '" + name + "'");
}

namespace {

struct Redex {
  std::size_t pos;
  std::size_t length;
  const WordTerms* replacement;
};

void collect_redexes(const OpAlgebra& alg, const Word& w, std::vector<Redex>& out, bool first_only) {
  out.clear();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k + 1 < w.size() && w[k] > w[k + 1]) {
      auto it = alg.swap_rules.find({w[k], w[k + 1]});
      if (it == alg.swap_rules.end())
        throw InvalidArgument("algebra " + alg.name + " has no swap rule for an inverted pair");
      out.push_back({k, 2, &it->second});
      if (first_only) return;
    }
    for (const auto& pr : alg.power_rules) {
      if (k + pr.power > w.size()) continue;
      bool match = true;
      for (std::size_t t = 0; t < pr.power && match; ++t) match = w[k + t] == pr.gen;
      if (match) {
        out.push_back({k, pr.power, &pr.replacement});
        if (first_only) return;
      }
    }
  }
}

}  // namespace

WordTerms normal_form(const OpAlgebra& alg, WordTerms raw, std::mt19937_64* rng) {
  WordTerms done;
  std::vector<Redex> redexes;
  for (auto it = raw.begin(); it != raw.end();) {
    if (it->second.is_zero()) it = raw.erase(it);
    else ++it;
  }
  while (!raw.empty()) {
    auto node = raw.extract(std::prev(raw.end()));
    const Word& w = node.key();
    collect_redexes(alg, w, redexes, rng == nullptr);
    if (redexes.empty()) {
      accumulate(done, w, node.mapped());
      continue;
    }
    const Redex& r = rng ? redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(*rng)]
                         : redexes.front();
    for (const auto& [rw, rc] : *r.replacement) {
      Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r.pos));
      next.insert(next.end(), rw.begin(), rw.end());
      next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(r.pos + r.length), w.end());
      accumulate(raw, next, rc * node.mapped());
    }
  }
  return done;
}

OpPoly::OpPoly(AlgebraPtr alg, const ParamScalar& multiple_of_identity) : alg_(std::move(alg)) {
  if (!multiple_of_identity.is_zero()) terms_.emplace(Word{}, multiple_of_identity);
}

OpPoly::OpPoly(AlgebraPtr alg, const WordTerms& raw) : alg_(std::move(alg)) {
  terms_ = normal_form(*alg_, raw);
}

OpPoly OpPoly::generator(AlgebraPtr alg, const std::string& name) {
  int k = alg->index_of(name);
  if (k < 0) throw UnknownSymbol("'" + name + "' is not a generator of " + alg->name);
  return word(std::move(alg), Word{static_cast<std::uint8_t>(k)});
}

OpPoly OpPoly::word(AlgebraPtr alg, const Word& w, const ParamScalar& c) {
  WordTerms raw;
  if (!c.is_zero()) raw.emplace(w, c);
  return OpPoly(std::move(alg), raw);
}

bool OpPoly::is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

ParamScalar OpPoly::identity_coefficient() const { return coefficient(Word{}); }

ParamScalar OpPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? ParamScalar() : it->second;
}

namespace {

void require_same_algebra(const OpPoly& x, const OpPoly& y) {
  if (x.algebra() && y.algebra() && x.algebra()->name != y.algebra()->name)
    throw AlgebraMismatch("operands belong to " + x.algebra()->name + " and " + y.algebra()->name);
}

}  // namespace

OpPoly& OpPoly::operator+=(const OpPoly& y) {
  require_same_algebra(*this, y);
  if (!alg_) alg_ = y.alg_;
  for (const auto& [w, c] : y.terms_) accumulate(terms_, w, c);
  return *this;
}

OpPoly& OpPoly::operator-=(const OpPoly& y) {
  require_same_algebra(*this, y);
  if (!alg_) alg_ = y.alg_;
  for (const auto& [w, c] : y.terms_) accumulate(terms_, w, -c);
  return *this;
}

OpPoly operator-(const OpPoly& x) {
  OpPoly out(x.alg_);
  for (const auto& [w, c] : x.terms_) out.terms_.emplace(w, -c);
  return out;
}

OpPoly operator*(const OpPoly& x, const OpPoly& y) {
  require_same_algebra(x, y);
  AlgebraPtr alg = x.alg_ ? x.alg_ : y.alg_;
  WordTerms raw;
  for (const auto& [wx, cx] : x.terms_) {
    for (const auto& [wy, cy] : y.terms_) {
      Word w = wx;
      w.insert(w.end(), wy.begin(), wy.end());
      accumulate(raw, w, cx * cy);
    }
  }
  OpPoly out(alg);
  if (alg) out.terms_ = normal_form(*alg, std::move(raw));
  return out;
}

OpPoly operator*(const ParamScalar& s, const OpPoly& x) {
  OpPoly out(x.alg_);
  if (s.is_zero()) return out;
  for (const auto& [w, c] : x.terms_) accumulate(out.terms_, w, s * c);
  return out;
}

OpPoly OpPoly::pow(unsigned n) const {
  OpPoly out = identity(alg_);
  for (unsigned k = 0; k < n; ++k) out = out * *this;
  return out;
}

OpPoly OpPoly::divided_by(Param p, unsigned power) const {
  OpPoly out(alg_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, c.divided_by(p, power));
  return out;
}

OpPoly OpPoly::substitute(const ExactBindings& values) const {
  OpPoly out(alg_);
  for (const auto& [w, c] : terms_) accumulate(out.terms_, w, c.substitute(values));
  return out;
}

std::string format_word(const OpAlgebra& alg, const Word& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size();) {
    std::size_t run = 1;
    while (k + run < w.size() && w[k + run] == w[k]) ++run;
    if (!out.empty()) out += "*";
    out += fmt_detail::power_factor(alg.generators[w[k]], static_cast<unsigned>(run));
    k += run;
  }
  return out;
}

std::string OpPoly::to_string() const {
  if (!alg_) return "0";
  std::vector<const WordTerms::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) {
    if (x->first.size() != y->first.size()) return x->first.size() > y->first.size();
    return x->first < y->first;
  });
  std::vector<fmt_detail::Summand> summands;
  for (const auto* t : order) {
    std::vector<std::string> tail;
    if (!t->first.empty()) tail.push_back(format_word(*alg_, t->first));
    fmt_detail::expand_summands(t->second, tail, summands);
  }
  return fmt_detail::join_summands(summands);
}

OpPoly commutator(const OpPoly& x, const OpPoly& y) { return x * y - y * x; }

OpPoly quantum_bracket(const OpPoly& x, const OpPoly& y) {
  return (ParamScalar::i() * commutator(x, y)).divided_by(Param::hbar);
}

OpPoly symmetrized(const OpPoly& x, const OpPoly& y) { return ParamScalar::frac(1, 2) * (x * y + y * x); }

ConfluenceResult confluence_probe(const OpAlgebra& alg, std::size_t trials, std::uint64_t seed,
                                  std::size_t max_length) {
  ConfluenceResult res;
  std::mt19937_64 words(seed), order_a(seed ^ 0xa5a5a5a5ULL), order_b(seed ^ 0x3c3c3c3cULL);
  std::uniform_int_distribution<std::size_t> len(1, max_length);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(alg.generators.size()) - 1);
  for (std::size_t t = 0; t < trials; ++t) {
    Word w(len(words));
    for (auto& g : w) g = static_cast<std::uint8_t>(letter(words));
    WordTerms start{{w, ParamScalar(1)}};
    auto a = normal_form(alg, start, &order_a);
    auto b = normal_form(alg, start, &order_b);
    auto c = normal_form(alg, start);
    ++res.trials;
    if (a != b || a != c) {
      res.pass = false;
      res.counterexample = w;
      return res;
    }
  }
  return res;
}

CasimirExpansion casimir_expand(const OpPoly& x) {
  const auto& alg = x.algebra();
  if (!alg || alg->name != "su2") throw AlgebraMismatch("Casimir expansion is defined on su2 only");
  static constexpr std::uint8_t kS1 = 0, kS2 = 1, kS3 = 2;
  auto s3_count = [](const Word& w) { return static_cast<std::size_t>(std::count(w.begin(), w.end(), kS3)); };

  std::map<std::pair<unsigned, Word>, ParamScalar> work;
  auto add = [&work](unsigned k, const Word& w, const ParamScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = work.try_emplace({k, w}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) work.erase(it);
    }
  };
  for (const auto& [w, c] : x.terms()) add(0, w, c);

  while (true) {
    auto it = std::find_if(work.begin(), work.end(), [&](const auto& e) { return s3_count(e.first.second) >= 2; });
    if (it == work.end()) break;
    auto [key, c] = *it;
    work.erase(it);
    // Normal words end in S3^m; w = w' S3^2 = Cas w' - w' S1^2 - w' S2^2.
    Word shorter(key.second.begin(), key.second.end() - 2);
    add(key.first + 1, shorter, c);
    Word a = shorter, b = shorter;
    a.insert(a.end(), {kS1, kS1});
    b.insert(b.end(), {kS2, kS2});
    for (const auto& [w2, c2] : normal_form(*alg, WordTerms{{a, ParamScalar(1)}, {b, ParamScalar(1)}}))
      add(key.first, w2, -(c * c2));
  }
  CasimirExpansion out;
  for (const auto& [key, c] : work) {
    auto [pos, inserted] = out.by_power.try_emplace(key.first, OpPoly(alg));
    pos->second += OpPoly::word(alg, key.second, c);
  }
  for (auto it = out.by_power.begin(); it != out.by_power.end();) {
    if (it->second.is_zero()) it = out.by_power.erase(it);
    else ++it;
  }
  return out;
}

OpPoly CasimirExpansion::substitute(const ParamScalar& value) const {
  OpPoly out;
  for (const auto& [k, w] : by_power) {
    ParamScalar f(1);
    for (unsigned n = 0; n < k; ++n) f *= value;
    out += f * w;
  }
  return out;
}

std::string CasimirExpansion::to_string() const {
  if (by_power.empty()) return "0";
  std::string out;
  for (auto it = by_power.rbegin(); it != by_power.rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string body = "(" + it->second.to_string() + ")";
    if (it->first == 0) out += body;
    else out += fmt_detail::power_factor("Cas", it->first) + "*" + body;
  }
  return out;
}

}  // namespace obstructo
