#include "obstructo/poisson.hpp"

#include <mutex>

#include "obstructo/error.hpp"
#include "obstructo/linalg.hpp"

namespace obstructo {

namespace {

CommPoly gen(const RingPtr& ring, const std::string& name) { return CommPoly::generator(ring, name); }

void set_bracket(PhaseSpace& sp, const std::string& a, const std::string& b, const CommPoly& value) {
  auto i = static_cast<std::size_t>(sp.ring->index_of(a));
  auto j = static_cast<std::size_t>(sp.ring->index_of(b));
  if (i < j) {
    sp.bracket_table[{i, j}] = value;
  } else {
    sp.bracket_table[{j, i}] = -value;
  }
}

/// head_gen^2 -> replacement
ReductionRule square_rule(const PolyRing& ring, const std::string& head_gen, const CommPoly& replacement) {
  ReductionRule r;
  r.head = ring.generator_monomial(static_cast<std::size_t>(ring.index_of(head_gen)), 2);
  r.replacement = replacement.terms();
  return r;
}

std::shared_ptr<PhaseSpace> build_r2n(int n) {
  auto sp = std::make_shared<PhaseSpace>();
  sp->kind = SpaceKind::r2n;
  sp->n = n;
  sp->name = "r2n(" + std::to_string(n) + ")";
  auto ring = std::make_shared<PolyRing>();
  ring->name = sp->name;
  auto qname = [n](int k) { return n == 1 ? std::string("q") : "q" + std::to_string(k); };
  auto pname = [n](int k) { return n == 1 ? std::string("p") : "p" + std::to_string(k); };
  for (int k = 1; k <= n; ++k) ring->generators.push_back(qname(k));
  for (int k = 1; k <= n; ++k) ring->generators.push_back(pname(k));
  sp->ring = ring;
  for (int k = 1; k <= n; ++k) set_bracket(*sp, pname(k), qname(k), CommPoly(sp->ring, ParamScalar(1)));
  for (int k = 1; k <= n; ++k) sp->basic_generators.push_back(qname(k));
  for (int k = 1; k <= n; ++k) sp->basic_generators.push_back(pname(k));
  sp->notes.push_back("sign convention {p_i, q^j} = delta_ij, so that [Q(p),Q(q)] = -i hbar I under (i/hbar)[.,.]");
  sp->notes.push_back("monomial order: lexicographic with q before p per index");
  return sp;
}

std::shared_ptr<PhaseSpace> build_s2() {
  auto sp = std::make_shared<PhaseSpace>();
  sp->kind = SpaceKind::s2;
  sp->name = "s2";
  auto ring = std::make_shared<PolyRing>();
  ring->name = "s2";
  ring->generators = {"S1", "S2", "S3"};
  RingPtr free_ring = ring;
  CommPoly s1 = gen(free_ring, "S1"), s2 = gen(free_ring, "S2");
  CommPoly rhs = CommPoly(free_ring, ParamScalar::param(Param::s, 2)) - s1 * s1 - s2 * s2;
  ring->rules.push_back(square_rule(*ring, "S3", rhs));
  sp->ring = ring;
  const auto& r = sp->ring;
  set_bracket(*sp, "S1", "S2", -gen(r, "S3"));
  set_bracket(*sp, "S2", "S3", -gen(r, "S1"));
  set_bracket(*sp, "S3", "S1", -gen(r, "S2"));
  sp->basic_generators = {"S1", "S2", "S3"};
  sp->instance = {{Param::s, GaussRat(1)}};
  sp->notes.push_back("{S_j, S_k} = -eps_jkl S_l");
  sp->notes.push_back("Casimir S1^2 + S2^2 + S3^2 = s^2 applied as S3^2 -> s^2 - S1^2 - S2^2");
  sp->notes.push_back("exact linear algebra uses the instance s = 1");
  return sp;
}

std::shared_ptr<PhaseSpace> build_tstar_s1() {
  auto sp = std::make_shared<PhaseSpace>();
  sp->kind = SpaceKind::tstar_s1;
  sp->name = "tstar_s1";
  auto ring = std::make_shared<PolyRing>();
  ring->name = "tstar_s1";
  ring->generators = {"l", "cos_theta", "sin_theta"};
  RingPtr free_ring = ring;
  CommPoly c = gen(free_ring, "cos_theta");
  ring->rules.push_back(square_rule(*ring, "sin_theta", CommPoly(free_ring, ParamScalar(1)) - c * c));
  sp->ring = ring;
  const auto& r = sp->ring;
  set_bracket(*sp, "l", "sin_theta", gen(r, "cos_theta"));
  set_bracket(*sp, "l", "cos_theta", -gen(r, "sin_theta"));
  set_bracket(*sp, "cos_theta", "sin_theta", CommPoly(r));
  sp->basic_generators = {"sin_theta", "cos_theta", "l"};
  sp->notes.push_back("{f,g} = f_l g_theta - f_theta g_l");
  sp->notes.push_back("normal monomials l^r cos^n(theta) sin^e(theta), e in {0,1}, via sin^2 -> 1 - cos^2");
  return sp;
}

std::shared_ptr<PhaseSpace> build_tstar_rplus() {
  auto sp = std::make_shared<PhaseSpace>();
  sp->kind = SpaceKind::tstar_rplus;
  sp->name = "tstar_rplus";
  auto ring = std::make_shared<PolyRing>();
  ring->name = "tstar_rplus";
  ring->generators = {"X", "Y"};
  sp->ring = ring;
  set_bracket(*sp, "X", "Y", ParamScalar(2) * gen(sp->ring, "Y"));
  sp->basic_generators = {"X", "Y"};
  sp->notes.push_back("X = pq, Y = q^2, {X, Y} = 2Y; free polynomial algebra");
  return sp;
}

std::shared_ptr<PhaseSpace> build_t2() {
  auto sp = std::make_shared<PhaseSpace>();
  sp->kind = SpaceKind::t2;
  sp->name = "t2";
  auto ring = std::make_shared<PolyRing>();
  ring->name = "t2";
  ring->generators = {"sx", "cx", "sy", "cy"};
  RingPtr free_ring = ring;
  CommPoly one(free_ring, ParamScalar(1));
  CommPoly cx = gen(free_ring, "cx"), cy = gen(free_ring, "cy");
  ring->rules.push_back(square_rule(*ring, "sx", one - cx * cx));
  ring->rules.push_back(square_rule(*ring, "sy", one - cy * cy));
  sp->ring = ring;
  const auto& r = sp->ring;
  ParamScalar k = ParamScalar(4) * ParamScalar::param(Param::pi, 2);
  set_bracket(*sp, "sx", "sy", k * (gen(r, "cx") * gen(r, "cy")));
  set_bracket(*sp, "sx", "cy", -k * (gen(r, "cx") * gen(r, "sy")));
  set_bracket(*sp, "cx", "sy", -k * (gen(r, "sx") * gen(r, "cy")));
  set_bracket(*sp, "cx", "cy", k * (gen(r, "sx") * gen(r, "sy")));
  sp->basic_generators = {"sx", "cx", "sy", "cy"};
  sp->instance = {{Param::pi, GaussRat(1)}};
  sp->notes.push_back("sx = sin(2 pi x), cx = cos(2 pi x), sy = sin(2 pi y), cy = cos(2 pi y) on the unit square");
  sp->notes.push_back("{f,g} = f_x g_y - f_y g_x; every generator bracket carries the factor 4 pi^2");
  return sp;
}

}  // namespace

CommPoly PhaseSpace::generator_bracket(std::size_t i, std::size_t j) const {
  if (i == j) return CommPoly(ring);
  auto it = bracket_table.find({std::min(i, j), std::max(i, j)});
  if (it == bracket_table.end()) return CommPoly(ring);
  return i < j ? it->second : -it->second;
}

SpacePtr make_space(const std::string& name, int n) {
  static std::mutex mu;
  static std::map<std::string, SpacePtr> cache;
  std::string key = name == "r2n" ? "r2n(" + std::to_string(n) + ")" : name;
  std::lock_guard lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  SpacePtr sp;
  if (name == "r2n") {
    if (n < 1) throw UnknownSpace("r2n requires n >= 1");
    sp = build_r2n(n);
  } else if (name == "s2") {
    sp = build_s2();
  } else if (name == "tstar_s1") {
    sp = build_tstar_s1();
  } else if (name == "tstar_rplus") {
    sp = build_tstar_rplus();
  } else if (name == "t2") {
    sp = build_t2();
  } else {
    throw UnknownSpace("unknown space '" + name + "'");
  }
  cache.emplace(key, sp);
  return sp;
}

PoissonPoly::PoissonPoly(SpacePtr space, CommPoly poly) : space_(std::move(space)), poly_(std::move(poly)) {}

PoissonPoly PoissonPoly::generator(const SpacePtr& space, const std::string& name) {
  return {space, CommPoly::generator(space->ring, name)};
}

PoissonPoly PoissonPoly::monomial(const SpacePtr& space, const Monomial& m, const ParamScalar& c) {
  return {space, CommPoly::monomial(space->ring, m, c)};
}

PoissonPoly PoissonPoly::reduce(const SpacePtr& space, const MonomialTerms& raw) {
  return {space, CommPoly(space->ring, raw)};
}

namespace {

void require_same_space(const PoissonPoly& f, const PoissonPoly& g) {
  if (!f.space() || !g.space() || f.space()->name != g.space()->name)
    throw SpaceMismatch("operands live on different phase spaces (" + (f.space() ? f.space()->name : "?") + " vs " +
                        (g.space() ? g.space()->name : "?") + ")");
}

}  // namespace

PoissonPoly& PoissonPoly::operator+=(const PoissonPoly& y) {
  require_same_space(*this, y);
  poly_ += y.poly_;
  return *this;
}

PoissonPoly& PoissonPoly::operator-=(const PoissonPoly& y) {
  require_same_space(*this, y);
  poly_ -= y.poly_;
  return *this;
}

PoissonPoly operator*(const PoissonPoly& x, const PoissonPoly& y) {
  require_same_space(x, y);
  return {x.space_, x.poly_ * y.poly_};
}

PoissonPoly bracket(const PoissonPoly& f, const PoissonPoly& g) {
  require_same_space(f, g);
  const auto& sp = *f.space();
  const std::size_t n = sp.ring->size();
  std::vector<CommPoly> df, dg;
  df.reserve(n);
  dg.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    df.push_back(f.poly().partial(k));
    dg.push_back(g.poly().partial(k));
  }
  CommPoly out(sp.ring);
  for (std::size_t i = 0; i < n; ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || dg[j].is_zero()) continue;
      CommPoly b = sp.generator_bracket(i, j);
      if (b.is_zero()) continue;
      out += df[i] * dg[j] * b;
    }
  }
  return {f.space(), out};
}

PoissonPoly jacobi_residual(const PoissonPoly& f, const PoissonPoly& g, const PoissonPoly& h) {
  return bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g));
}

std::size_t MonomialIndex::index(const Monomial& m) {
  auto [it, inserted] = ids_.try_emplace(m, order_.size());
  if (inserted) order_.push_back(m);
  return it->second;
}

std::map<std::size_t, GaussRat> MonomialIndex::coordinates(const CommPoly& p, const ExactBindings& instance) {
  std::map<std::size_t, GaussRat> out;
  for (const auto& [m, c] : p.terms()) {
    ParamScalar v = c.substitute(instance);
    if (!v.is_constant())
      throw ParameterInBasis("coefficient " + c.to_string() + " still depends on formal parameters");
    GaussRat g = v.constant_term();
    if (!g.is_zero()) out[index(m)] += g;
  }
  return out;
}

namespace {

linalg::Vector dense(const std::map<std::size_t, GaussRat>& sparse, std::size_t cols) {
  linalg::Vector v(cols);
  for (const auto& [k, g] : sparse) v[k] = g;
  return v;
}

void require_parameter_free(const std::vector<PoissonPoly>& basis) {
  for (const auto& b : basis)
    if (b.poly().has_params()) throw ParameterInBasis("basis element " + b.to_string() + " mentions a parameter");
}

}  // namespace

SubalgebraResult is_lie_subalgebra(const SpacePtr& space, const std::vector<PoissonPoly>& basis) {
  MonomialIndex idx;
  std::vector<std::map<std::size_t, GaussRat>> coords;
  for (const auto& b : basis) coords.push_back(idx.coordinates(b.poly(), space->instance));
  std::vector<std::tuple<std::size_t, std::size_t, PoissonPoly, std::map<std::size_t, GaussRat>>> brackets;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      PoissonPoly br = bracket(basis[i], basis[j]);
      auto c = idx.coordinates(br.poly(), space->instance);
      brackets.emplace_back(i, j, std::move(br), std::move(c));
    }
  linalg::Span span(idx.size());
  for (const auto& c : coords) span.insert(dense(c, idx.size()));
  SubalgebraResult res;
  for (const auto& [i, j, br, c] : brackets) {
    if (!span.contains(dense(c, idx.size()))) {
      res.closed = false;
      res.witness = std::make_pair(basis[i], basis[j]);
      res.witness_bracket = br;
      return res;
    }
  }
  return res;
}

SubalgebraResult is_lie_subalgebra(const SpacePtr& space, const MonomialPredicate& member, unsigned cap) {
  std::vector<PoissonPoly> spanning;
  for (const auto& m : reduced_monomials(*space->ring, cap))
    if (member(m)) spanning.push_back(PoissonPoly::monomial(space, m));
  SubalgebraResult res;
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    for (std::size_t j = i + 1; j < spanning.size(); ++j) {
      PoissonPoly br = bracket(spanning[i], spanning[j]);
      for (const auto& [m, c] : br.terms()) {
        if (!member(m)) {
          res.closed = false;
          res.witness = std::make_pair(spanning[i], spanning[j]);
          res.witness_bracket = br;
          return res;
        }
      }
    }
  }
  return res;
}

std::vector<PoissonPoly> normalizer(const SpacePtr& space, const std::vector<PoissonPoly>& basis, unsigned cap) {
  require_parameter_free(basis);
  for (const auto& b : basis)
    if (b.degree() > static_cast<int>(cap))
      throw InvalidArgument("degree cap " + std::to_string(cap) + " is below the basis degree");
  if (auto closure = is_lie_subalgebra(space, basis); !closure.closed)
    throw NotASubalgebra("bracket of " + closure.witness->first.to_string() + " and " +
                         closure.witness->second.to_string() + " leaves the span");

  const auto candidates = reduced_monomials(*space->ring, cap);
  const std::size_t nc = candidates.size();
  const std::size_t nb = basis.size();
  // Unknowns: x_i for each candidate, then y_{j,l} expressing {f, b_j} = sum_l y_{j,l} b_l.
  const std::size_t unknowns = nc + nb * nb;

  MonomialIndex idx;
  std::vector<std::map<std::size_t, GaussRat>> basis_coords;
  for (const auto& b : basis) basis_coords.push_back(idx.coordinates(b.poly(), space->instance));
  // brk[j][i] = coordinates of {m_i, b_j}
  std::vector<std::vector<std::map<std::size_t, GaussRat>>> brk(nb);
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < nc; ++i)
      brk[j].push_back(idx.coordinates(bracket(PoissonPoly::monomial(space, candidates[i]), basis[j]).poly(),
                                       space->instance));

  linalg::Matrix rows;
  for (std::size_t j = 0; j < nb; ++j) {
    for (std::size_t mono = 0; mono < idx.size(); ++mono) {
      linalg::Vector row(unknowns);
      bool nonzero = false;
      for (std::size_t i = 0; i < nc; ++i) {
        auto it = brk[j][i].find(mono);
        if (it != brk[j][i].end()) {
          row[i] = it->second;
          nonzero = true;
        }
      }
      for (std::size_t l = 0; l < nb; ++l) {
        auto it = basis_coords[l].find(mono);
        if (it != basis_coords[l].end()) {
          row[nc + j * nb + l] = -it->second;
          nonzero = true;
        }
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  auto kernel = linalg::nullspace(rows, unknowns);
  // Project onto the x coordinates and take a reduced echelon basis, with the
  // highest-degree candidates leading.
  linalg::Matrix projected;
  for (const auto& v : kernel) {
    linalg::Vector x(nc);
    bool nonzero = false;
    for (std::size_t i = 0; i < nc; ++i) {
      x[i] = v[nc - 1 - i];
      nonzero = nonzero || !x[i].is_zero();
    }
    if (nonzero) projected.push_back(std::move(x));
  }
  auto ech = linalg::rref(std::move(projected), nc);
  std::vector<PoissonPoly> out;
  for (auto it = ech.rows.rbegin(); it != ech.rows.rend(); ++it) {
    MonomialTerms raw;
    for (std::size_t i = 0; i < nc; ++i)
      if (!(*it)[i].is_zero()) raw[candidates[nc - 1 - i]] = ParamScalar((*it)[i]);
    out.push_back(PoissonPoly::reduce(space, raw));
  }
  return out;
}

std::vector<PoissonPoly> basic_algebra_basis(const SpacePtr& space) {
  std::vector<PoissonPoly> out;
  if (space->kind == SpaceKind::r2n || space->kind == SpaceKind::tstar_rplus)
    out.emplace_back(space, ParamScalar(1));
  for (const auto& g : space->basic_generators) out.push_back(PoissonPoly::generator(space, g));
  return out;
}

PoissonPoly symplectic_laplacian(const std::vector<PoissonPoly>& basic_basis, const PoissonPoly& f) {
  require_parameter_free(basic_basis);
  PoissonPoly out(f.space());
  for (const auto& b : basic_basis) out -= bracket(b, bracket(b, f));
  return out;
}

Markers obstruction_markers(const SpacePtr& space, unsigned cap) {
  if (cap < 2) throw InvalidArgument("obstruction markers need a degree cap of at least 2");
  Markers mk;
  mk.cap = cap;
  mk.d2 = !space->ring->rules.empty();
  const auto monos = reduced_monomials(*space->ring, cap);
  MonomialIndex idx;
  const std::size_t unit = idx.index(space->ring->unit());
  std::vector<std::map<std::size_t, GaussRat>> vectors;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    PoissonPoly a = PoissonPoly::monomial(space, monos[i]);
    for (std::size_t j = i + 1; j < monos.size(); ++j) {
      PoissonPoly br = bracket(a, PoissonPoly::monomial(space, monos[j]));
      if (!br.is_zero()) vectors.push_back(idx.coordinates(br.poly(), space->instance));
    }
  }
  linalg::Span span(idx.size());
  for (const auto& v : vectors) span.insert(dense(v, idx.size()));
  linalg::Vector target(idx.size());
  target[unit] = GaussRat(1);
  mk.d1 = span.contains(target);
  return mk;
}

}  // namespace obstructo
