#ifndef POLYMEM_MEMBERSHIP_HPP
#define POLYMEM_MEMBERSHIP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polymem/chain.hpp"
#include "polymem/errors.hpp"
#include "polymem/fp_matrix.hpp"
#include "polymem/lattice.hpp"
#include "polymem/polytope.hpp"
#include "polymem/rng.hpp"
#include "polymem/sparse_poly.hpp"

namespace polymem {

// One concrete instance over one prime field: target support A, multiplier
// supports C_1..C_k and generators f_1..f_k. Generator supports need not be
// equal, which the variable-degree instances use.
struct MembershipProblem {
    PointSet A;
    std::vector<PointSet> C;
    std::vector<SparsePoly> f;

    std::size_t k() const { return f.size(); }

    void check() const {
        if (f.empty() || C.size() != f.size())
            throw InputError("MembershipProblem: need k >= 1 generators and k multiplier supports");
        for (const auto& fi : f)
            if (fi.dim() != A.dim()) throw DimensionMismatch("MembershipProblem: mixed dimensions");
        for (const auto& ci : C)
            if (ci.dim() != A.dim()) throw DimensionMismatch("MembershipProblem: mixed dimensions");
        for (std::size_t i = 1; i < f.size(); ++i)
            if (f[i].field().modulus() != f[0].field().modulus())
                throw InputError("MembershipProblem: generators over different fields");
    }
};

using MultiplierTuple = std::vector<SparsePoly>;

// The matrix of support conditions together with its labels: columns are
// (generator, multiplier exponent) pairs in (i, lex) order, rows are product
// monomials in lex order.
struct OmegaSystem {
    FpMatrix matrix;
    std::vector<std::pair<std::size_t, Point>> cols;
    std::vector<Point> rows;
};

namespace detail {

inline PointSet product_support(const MembershipProblem& p) {
    PointSet rows(p.A.dim());
    for (std::size_t i = 0; i < p.k(); ++i)
        if (!p.C[i].empty() && !p.f[i].is_zero())
            rows = set_union(rows, minkowski(p.C[i], p.f[i].support()));
    return rows;
}

inline OmegaSystem build_system(const MembershipProblem& p, bool exclude_target,
                                const PointSet* extra_rows = nullptr) {
    p.check();
    PointSet rowset = product_support(p);
    if (extra_rows) rowset = set_union(rowset, *extra_rows);
    if (exclude_target) rowset = set_difference(rowset, p.A);

    std::vector<std::pair<std::size_t, Point>> cols;
    for (std::size_t i = 0; i < p.k(); ++i)
        for (const auto& c : p.C[i]) cols.emplace_back(i, c);

    FpMatrix m(rowset.size(), cols.size(), p.f[0].field());
    for (std::size_t r = 0; r < rowset.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            m.at(r, c) = p.f[cols[c].first].coeff(sub(rowset[r], cols[c].second));
    return OmegaSystem{std::move(m), std::move(cols),
                       std::vector<Point>(rowset.begin(), rowset.end())};
}

inline MultiplierTuple tuple_from_vector(const MembershipProblem& p,
                                         const std::vector<std::pair<std::size_t, Point>>& cols,
                                         const FpVec& v) {
    MultiplierTuple t;
    for (std::size_t i = 0; i < p.k(); ++i) t.emplace_back(p.A.dim(), p.f[0].field());
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (v[c] != 0) t[cols[c].first].set_coeff(cols[c].second, v[c]);
    return t;
}

}  // namespace detail

// Columns indexed by multiplier coefficients, rows by the product monomials
// outside A; entry(e, (i,c)) = coefficient of f_i at e - c.
inline FpMatrix build_constraint_matrix(const MembershipProblem& p) {
    return detail::build_system(p, true).matrix;
}

inline SparsePoly combine(const MembershipProblem& p, const MultiplierTuple& t) {
    SparsePoly g(p.A.dim(), p.f[0].field());
    for (std::size_t i = 0; i < p.k(); ++i) g = g + t[i] * p.f[i];
    return g;
}

// Basis of W_A^C = { (c_1..c_k) : supp(sum c_i f_i) subseteq A }.
inline std::vector<MultiplierTuple> solution_space_W(const MembershipProblem& p) {
    auto sys = detail::build_system(p, true);
    std::vector<MultiplierTuple> basis;
    for (const auto& v : sys.matrix.kernel_basis())
        basis.push_back(detail::tuple_from_vector(p, sys.cols, v));
    return basis;
}

inline std::size_t dim_W(const MembershipProblem& p) {
    auto sys = detail::build_system(p, true);
    return sys.matrix.cols() - sys.matrix.rank();
}

// Basis of ker phi^C: every product monomial constrained to zero.
inline std::vector<MultiplierTuple> syzygy_kernel(const MembershipProblem& p) {
    auto sys = detail::build_system(p, false);
    std::vector<MultiplierTuple> basis;
    for (const auto& v : sys.matrix.kernel_basis())
        basis.push_back(detail::tuple_from_vector(p, sys.cols, v));
    return basis;
}

inline std::size_t dim_syzygy_kernel(const MembershipProblem& p) {
    auto sys = detail::build_system(p, false);
    return sys.matrix.cols() - sys.matrix.rank();
}

struct MembershipReport {
    std::size_t dimW = 0;
    std::size_t dimKer = 0;
    std::size_t dimV = 0;
    std::vector<SparsePoly> basis;
    std::size_t omega_rows = 0;
    std::size_t omega_cols = 0;
    std::vector<std::uint64_t> primes;
    std::vector<std::uint64_t> seeds;
    Point translation;  // recentering shift applied to B, if any
};

// dim V_A^{C,f} = dim W - dim ker, with a canonical independent basis of the
// image space. Deterministic for a fixed problem.
inline MembershipReport membership_dim(const MembershipProblem& p) {
    auto sysW = detail::build_system(p, true);
    const std::size_t rankW = sysW.matrix.rank();
    MembershipReport rep;
    rep.omega_rows = sysW.matrix.rows();
    rep.omega_cols = sysW.matrix.cols();
    rep.dimW = sysW.matrix.cols() - rankW;
    rep.dimKer = dim_syzygy_kernel(p);
    rep.dimV = rep.dimW - rep.dimKer;
    rep.primes = {p.f[0].field().modulus()};

    // images of a W-basis, reduced to a canonical independent set
    const std::vector<Point> a_pts(p.A.begin(), p.A.end());
    std::vector<FpVec> images;
    for (const auto& v : sysW.matrix.kernel_basis()) {
        SparsePoly g = combine(p, detail::tuple_from_vector(p, sysW.cols, v));
        if (!g.support().is_subset_of(p.A))
            throw Error("membership_dim: image escapes the target support");
        FpVec row(a_pts.size(), 0);
        for (std::size_t j = 0; j < a_pts.size(); ++j) row[j] = g.coeff(a_pts[j]);
        images.push_back(std::move(row));
    }
    auto reduced = independent_rows(images, a_pts.size(), p.f[0].field());
    if (reduced.size() != rep.dimV) throw Error("membership_dim: basis size mismatch");
    for (const auto& row : reduced) {
        SparsePoly g(p.A.dim(), p.f[0].field());
        for (std::size_t j = 0; j < a_pts.size(); ++j)
            if (row[j] != 0) g.set_coeff(a_pts[j], row[j]);
        rep.basis.push_back(g);
    }
    return rep;
}

struct Decomposition {
    MultiplierTuple multipliers;            // canonical particular solution
    std::vector<MultiplierTuple> kernel;    // full coset = particular + span(kernel)
};

// Solve sum c_i f_i = g with supp(c_i) subseteq C_i. NotAMember (nullopt)
// means: not representable with these multiplier supports.
inline std::optional<Decomposition> decompose(const SparsePoly& g, const MembershipProblem& p) {
    if (!g.support().is_subset_of(p.A))
        throw InputError("decompose: supp(g) must lie in A");
    PointSet gsupp = g.support();
    auto sys = detail::build_system(p, false, &gsupp);
    FpVec b(sys.rows.size(), 0);
    for (std::size_t r = 0; r < sys.rows.size(); ++r) b[r] = g.coeff(sys.rows[r]);
    auto sol = sys.matrix.solve(b);
    if (!sol) return std::nullopt;
    Decomposition d;
    d.multipliers = detail::tuple_from_vector(p, sys.cols, sol->particular);
    for (const auto& v : sol->kernel) d.kernel.push_back(detail::tuple_from_vector(p, sys.cols, v));
    return d;
}

// ---------------------------------------------------------------------------
// Genericity protocol: every dimension is recomputed over a second prime and a
// second seed; disagreement marks a non-generic sample.

struct Protocol {
    std::vector<std::uint64_t> primes{32003, 46337};
    std::vector<std::uint64_t> seeds{1, 2};
};

struct GenericProblem {
    PointSet A;
    std::vector<PointSet> gen_supports;  // supports of f_1..f_k
    std::vector<PointSet> C;
};

inline MembershipProblem materialize(const GenericProblem& gp, std::uint64_t prime,
                                     std::uint64_t seed) {
    MembershipProblem p;
    p.A = gp.A;
    p.C = gp.C;
    for (std::size_t i = 0; i < gp.gen_supports.size(); ++i)
        p.f.push_back(random_generic(gp.gen_supports[i], mix_seed(seed, i), prime));
    return p;
}

inline MembershipReport membership_dim_generic(const GenericProblem& gp,
                                               const Protocol& proto = {}) {
    if (proto.primes.empty() || proto.seeds.empty())
        throw InputError("protocol needs at least one prime and one seed");
    std::optional<MembershipReport> first;
    for (auto prime : proto.primes)
        for (auto seed : proto.seeds) {
            MembershipReport r = membership_dim(materialize(gp, prime, seed));
            if (!first) {
                first = r;
            } else if (r.dimW != first->dimW || r.dimKer != first->dimKer ||
                       r.dimV != first->dimV) {
                throw GenericityFailure(
                    "dimension disagreement across primes/seeds (non-generic sample); "
                    "re-run with a fresh seed");
            }
        }
    first->primes = proto.primes;
    first->seeds = proto.seeds;
    return first.value();
}

inline std::size_t syzygy_dim_generic(const std::vector<PointSet>& gen_supports,
                                      const std::vector<PointSet>& c,
                                      const Protocol& proto = {}) {
    GenericProblem gp{PointSet(c.front().dim()), gen_supports, c};
    std::optional<std::size_t> first;
    for (auto prime : proto.primes)
        for (auto seed : proto.seeds) {
            std::size_t d = dim_syzygy_kernel(materialize(gp, prime, seed));
            if (!first)
                first = d;
            else if (*first != d)
                throw GenericityFailure("syzygy dimension disagreement (non-generic sample)");
        }
    return first.value();
}

// ---------------------------------------------------------------------------
// Foundations

struct FoundationResult {
    Rational t;                      // dilation factor of the multiplier body
    Point translation;               // lattice shift applied to B before dilating
    std::vector<PointSet> supports;  // k copies
};

// k copies of Z(tB), t = max(0, min_enclosing_factor(A,B) - 1), with B first
// shifted by a lattice point so dilations about the origin make sense. The
// supports are mapped back to the original coordinates of the generators.
inline FoundationResult foundation_supports(const PointSet& a, const HPolytope& b, std::size_t k,
                                            bool override_hypotheses = false) {
    if (b.affine_dim() <= 1) throw SegmentBody("foundation_supports: B must not be a segment");
    const std::size_t n = b.dim();
    if (!override_hypotheses && !(k >= 1 && k + 1 <= n + 1))
        throw InputError("foundation_supports: k outside theorem hypotheses (override to force)");

    Point u(n, 0);
    if (!b.contains(u)) {
        PointSet zb = lattice_points(b);
        if (zb.empty()) throw InputError("foundation_supports: B has no lattice point");
        u = zb[0];  // lex-smallest lattice point
    }
    Point neg_u(u);
    for (auto& c : neg_u) c = -c;
    HPolytope b0 = translate(b, neg_u);

    const Rational s = min_enclosing_factor(a, b0);
    FoundationResult res;
    res.t = s > 1 ? s - 1 : Rational(0);
    res.translation = u;
    PointSet supp(n);
    if (res.t == 0) {
        supp.insert(Point(n, 0));
    } else {
        supp = lattice_points(dilate(b0, res.t));
    }
    supp = supp.translated(neg_u);
    res.supports.assign(k, supp);
    return res;
}

// ---------------------------------------------------------------------------
// Chain stabilization

struct StabilizationReport {
    std::size_t first_index = 0;                 // first i with A subseteq Z(C_i + B)
    std::vector<std::size_t> dims;               // dimV along the chain from there
    bool constant = true;
};

inline StabilizationReport stabilization_check(const PointSet& a, const NormalChain& chain,
                                               std::size_t k, const Protocol& proto = {}) {
    const HPolytope& b = chain.base;
    const PointSet zb = lattice_points(b);
    std::optional<std::size_t> start;
    for (std::size_t i = 0; i < chain.terms.size(); ++i) {
        HPolytope sum = minkowski_sum(chain.terms[i], b);
        bool inside = true;
        for (const auto& q : a)
            if (!sum.contains(q)) {
                inside = false;
                break;
            }
        if (inside) {
            start = i;
            break;
        }
    }
    if (!start)
        throw InputError("stabilization_check: no chain term satisfies A subseteq Z(C_i + B)");

    StabilizationReport rep;
    rep.first_index = *start;
    for (std::size_t i = *start; i < chain.terms.size(); ++i) {
        GenericProblem gp{a, std::vector<PointSet>(k, zb),
                          std::vector<PointSet>(k, lattice_points(chain.terms[i]))};
        rep.dims.push_back(membership_dim_generic(gp, proto).dimV);
    }
    for (auto d : rep.dims)
        if (d != rep.dims.front()) rep.constant = false;
    return rep;
}

// ---------------------------------------------------------------------------
// Koszul kernel dimension

inline std::int64_t binomial(std::size_t n, std::size_t r) {
    if (r > n) return 0;
    std::int64_t v = 1;
    for (std::size_t i = 0; i < r; ++i) v = v * static_cast<std::int64_t>(n - i) / static_cast<std::int64_t>(i + 1);
    return v;
}

// Alternating count over the truncated complex with pieces supported on the
// iterated erosions: sum_{j=1}^{k-1} (-1)^{j+1} binom(k, j+1) |Z(C (-)^j B)|.
// Iterated point-set erosion by Z(B) equals the lattice of the iterated
// polytope erosion for convex C and integral B.
inline std::int64_t koszul_kernel_dim(const PointSet& c, const HPolytope& b, std::size_t k) {
    if (k < 2) throw InputError("koszul_kernel_dim: k must be >= 2");
    const PointSet zb = lattice_points(b);
    if (zb.empty()) throw InputError("koszul_kernel_dim: B has no lattice points");
    std::int64_t total = 0;
    PointSet cur = c;
    for (std::size_t j = 1; j <= k - 1; ++j) {
        cur = erode_points(cur, zb);
        if (cur.empty()) break;
        const std::int64_t term = binomial(k, j + 1) * static_cast<std::int64_t>(cur.size());
        total += (j % 2 == 1) ? term : -term;
    }
    return total;
}

// The same count under the other index/sign reading that is in circulation:
// sum_{j=1}^{k-2} (-1)^j binom(k, k-j-1) |Z(C (-)^j B)|. The direct kernel
// rank arbitrates between the two readings; the report records the outcome.
inline std::int64_t koszul_kernel_dim_variant(const PointSet& c, const HPolytope& b,
                                              std::size_t k) {
    if (k < 2) throw InputError("koszul_kernel_dim_variant: k must be >= 2");
    const PointSet zb = lattice_points(b);
    std::int64_t total = 0;
    PointSet cur = c;
    for (std::size_t j = 1; j + 1 <= k - 1; ++j) {
        cur = erode_points(cur, zb);
        if (cur.empty()) break;
        const std::int64_t term = binomial(k, k - j - 1) * static_cast<std::int64_t>(cur.size());
        total += (j % 2 == 1) ? -term : term;
    }
    return total;
}

struct KoszulReport {
    std::int64_t formula = 0;   // implemented reading
    std::int64_t variant = 0;   // alternative reading
    std::int64_t oracle = 0;    // direct kernel rank of the stacked system
    bool formula_matches = false;
    bool variant_matches = false;
};

inline KoszulReport koszul_report(const PointSet& c, const HPolytope& b, std::size_t k,
                                  const Protocol& proto = {}) {
    KoszulReport rep;
    rep.formula = koszul_kernel_dim(c, b, k);
    rep.variant = koszul_kernel_dim_variant(c, b, k);
    const PointSet zb = lattice_points(b);
    rep.oracle = static_cast<std::int64_t>(
        syzygy_dim_generic(std::vector<PointSet>(k, zb), std::vector<PointSet>(k, c), proto));
    rep.formula_matches = rep.formula == rep.oracle;
    rep.variant_matches = rep.variant == rep.oracle;
    return rep;
}

// ---------------------------------------------------------------------------
// Per-step growth bound along a chain: |Z(slab) (-) face(B, alpha)| where the
// slab holds the lattice points gained in the step and alpha is the normal of
// the shifted facet.
inline std::int64_t face_step_bound(const HPolytope& b, const HPolytope& c_i,
                                    const HPolytope& c_next, std::size_t m) {
    if (m >= b.facet_count()) throw InvalidFacet("face_step_bound: facet index out of range");
    const PointSet slab = set_difference(lattice_points(c_next), lattice_points(c_i));
    if (slab.empty()) return 0;
    const Point& alpha = b.facets()[m].normal;
    const PointSet f = face_points(lattice_points(b), alpha);
    return static_cast<std::int64_t>(erode_points(slab, f).size());
}

}  // namespace polymem

#endif
