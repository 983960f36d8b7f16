#ifndef POLYMEM_CHAIN_HPP
#define POLYMEM_CHAIN_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polymem/errors.hpp"
#include "polymem/polytope.hpp"

namespace polymem {

// Metadata for one inclusion terms[i] -> terms[i+1]. facet == -1 marks the
// initial lattice-preserving dilation; t1/t2 bracket the *resulting* term
// between the homotheties t1*B and t2*B.
struct ChainStep {
    int facet = -1;
    Rational tau = 0;
    Rational t1 = 1;
    Rational t2 = 1;
};

struct StepReport {
    bool single_facet_shift = false;  // next differs from prev at facet m only, outward
    bool facet_count = false;         // face count preserved, body stays full-dimensional
    bool erosion_identity = false;    // next == base + (next (-) base)
    bool slab_coplanar = false;       // new lattice points confined to one hyperplane || facet m

    bool passed() const {
        return single_facet_shift && facet_count && erosion_identity && slab_coplanar;
    }
};

// Nested sequence of polytopes grown from base by single-facet shifts between
// homotheties. Terms keep exact rational offsets; they are never rounded.
struct NormalChain {
    HPolytope base;
    Rational epsilon0 = 1;
    std::vector<HPolytope> terms;   // terms[0] == base
    std::vector<ChainStep> steps;   // steps.size() == terms.size() - 1
    bool descending = false;

    std::pair<Rational, Rational> term_bracket(std::size_t i) const {
        if (i == 0) return {Rational(1), Rational(1)};
        return {steps[i - 1].t1, steps[i - 1].t2};
    }

    // Dilation factor when the term is a pure homothety of base (t1 == t2).
    std::optional<Rational> homothety_factor(std::size_t i) const {
        auto [t1, t2] = term_bracket(i);
        if (t1 == t2) return t1;
        return std::nullopt;
    }
};

// Largest dilation factor needed to capture any lattice point just outside X,
// scanned over the bounding box of 2X; and the midpoint eps0 = (1+t_crit)/2
// with Z(eps0 X) = Z(X). The postcondition is re-verified by enumeration and
// eps0 is walked toward 1 in the (rare) case the scanned box understates
// t_crit; the loop terminates because only finitely many lattice points sit
// between X and 2X.
inline std::pair<Rational, Rational> epsilon0(const HPolytope& x) {
    if (!x.origin_interior())
        throw OriginNotInterior("epsilon0: origin must be interior (translate first)");
    const PointSet zx = lattice_points(x);
    const HPolytope x2 = dilate(x, 2);
    const PointSet box_pts = lattice_points(
        [&] {
            auto verts = x2.vertices();
            std::vector<std::pair<std::int64_t, std::int64_t>> bounds(x.dim());
            for (std::size_t j = 0; j < x.dim(); ++j) {
                Rational mn = verts[0][j], mx = verts[0][j];
                for (const auto& v : verts) {
                    mn = std::min(mn, v[j]);
                    mx = std::max(mx, v[j]);
                }
                bounds[j] = {to_i64(floor_int(mn)), to_i64(ceil_int(mx))};
            }
            return box(bounds);
        }());

    auto containment_factor = [&](const Point& q) {
        Rational s = 0;
        for (const auto& f : x.facets()) s = std::max(s, Rational(dot(f.normal, q)) / f.offset);
        return s;
    };

    std::optional<Rational> t_crit;
    for (const auto& q : box_pts) {
        if (x.contains(q)) continue;
        Rational s = containment_factor(q);
        if (!t_crit || s < *t_crit) t_crit = s;
    }
    if (!t_crit) t_crit = Rational(2);  // the scan certifies the box of 2X only

    Rational eps0 = (1 + *t_crit) / 2;
    while (lattice_points(dilate(x, eps0)).size() != zx.size()) eps0 = (1 + eps0) / 2;
    return {eps0, *t_crit};
}

// Inward analogue of epsilon0: eps < 1 with Z(eps X) = interior lattice points
// of X and nothing between eps X and the boundary.
inline Rational epsilon_minus1(const HPolytope& x) {
    if (!x.origin_interior())
        throw OriginNotInterior("epsilon_minus1: origin must be interior (translate first)");
    Rational s_int = 0;
    for (const auto& q : lattice_points(x)) {
        bool strict = true;
        for (const auto& f : x.facets())
            if (Rational(dot(f.normal, q)) == f.offset) {
                strict = false;
                break;
            }
        if (!strict) continue;
        Rational s = 0;
        for (const auto& f : x.facets()) s = std::max(s, Rational(dot(f.normal, q)) / f.offset);
        s_int = std::max(s_int, s);
    }
    return (s_int + 1) / 2;
}

// Replace offset b_m by (1+tau) b_m; all other facets unchanged.
inline HPolytope shift_facet(const HPolytope& x, std::size_t m, const Rational& tau) {
    if (m >= x.facet_count()) throw InvalidFacet("shift_facet: facet index out of range");
    if (tau < 0) throw InvalidFacet("shift_facet: negative parameter");
    std::vector<Facet> fs = x.facets();
    fs[m].offset *= (1 + tau);
    return HPolytope(x.dim(), std::move(fs));
}

// Check one inclusion prev -> next against the per-step chain conditions.
// Failures are report entries, not errors.
inline StepReport validate_step(const HPolytope& base, const HPolytope& prev,
                                const HPolytope& next, std::size_t m) {
    StepReport rep;
    const std::size_t L = base.facet_count();
    if (m >= L) throw InvalidFacet("validate_step: facet index out of range");

    // bracketing consistency: a single outward shift of facet m
    if (prev.facet_count() == L && next.facet_count() == L) {
        bool ok = true;
        for (std::size_t i = 0; i < L; ++i) {
            if (prev.facets()[i].normal != base.facets()[i].normal ||
                next.facets()[i].normal != base.facets()[i].normal) {
                ok = false;
                break;
            }
            if (i == m) {
                if (!(next.facets()[i].offset < prev.facets()[i].offset)) ok = false;
            } else if (next.facets()[i].offset != prev.facets()[i].offset) {
                ok = false;
            }
            if (!ok) break;
        }
        rep.single_facet_shift = ok;
    }

    rep.facet_count = !next.is_empty() && next.is_full_dimensional() &&
                      next.pruned().facet_count() == L;

    if (auto eroded = erode(next, base)) {
        rep.erosion_identity = polytope_equal(minkowski_sum(base, *eroded), next);
    }

    const PointSet grown = set_difference(lattice_points(next), lattice_points(prev));
    if (grown.empty()) {
        rep.slab_coplanar = true;
    } else {
        const Point& alpha = base.facets()[m].normal;
        const std::int64_t level = dot(alpha, grown[0]);
        rep.slab_coplanar = true;
        for (const auto& q : grown)
            if (dot(alpha, q) != level) {
                rep.slab_coplanar = false;
                break;
            }
    }
    return rep;
}

// Facet order induced by a generic linear form on the vertices of the dual
// polytope (facet i sits at a_i / (-b_i)). The form is chosen deterministically
// as (1, K, K^2, ...) with the smallest K separating all values.
inline std::vector<std::size_t> psi_facet_order(const HPolytope& b) {
    const std::size_t L = b.facet_count();
    for (std::int64_t K = 1;; ++K) {
        std::vector<Rational> vals(L);
        for (std::size_t i = 0; i < L; ++i) {
            Rational v = 0;
            Rational w = 1;
            for (std::size_t j = 0; j < b.dim(); ++j) {
                v += w * Rational(b.facets()[i].normal[j]) / (-b.facets()[i].offset);
                w *= K;
            }
            vals[i] = v;
        }
        bool distinct = true;
        for (std::size_t i = 0; i < L && distinct; ++i)
            for (std::size_t j = i + 1; j < L; ++j)
                if (vals[i] == vals[j]) {
                    distinct = false;
                    break;
                }
        if (!distinct) continue;
        std::vector<std::size_t> order(L);
        for (std::size_t i = 0; i < L; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });
        return order;
    }
}

struct ChainOptions {
    std::optional<Rational> equidistant_gap;  // fixed dilation-factor gap per round
    bool psi_order = false;
    Rational tau_floor = Rational(BigInt(1), BigInt(1) << 40);
    int max_restarts = 24;
};

namespace detail {

inline void require_chain_base(const HPolytope& b) {
    if (!b.origin_interior())
        throw OriginNotInterior("chain: base must contain the origin in its interior");
    if (b.affine_dim() < 2) throw InputError("chain: base must not be a segment");
    if (!b.is_full_dimensional()) throw InputError("chain: base must be full-dimensional");
}

}  // namespace detail

// Grow a normal chain from B until the last pure dilation reaches t_max.
// Rounds shift each facet once by a uniform relative parameter tau, found by
// halving until every inclusion validates; each candidate is checked by full
// enumeration rather than by continuity estimates.
inline NormalChain build_normal_chain(const HPolytope& b_in, const Rational& t_max,
                                      const ChainOptions& opts = {}) {
    HPolytope b = b_in;
    detail::require_chain_base(b);
    if (t_max <= 1) throw InputError("build_normal_chain: t_max must exceed 1");
    if (opts.equidistant_gap && *opts.equidistant_gap <= 0)
        throw InputError("build_normal_chain: equidistant gap must be positive");

    const auto order = opts.psi_order ? psi_facet_order(b) : [&] {
        std::vector<std::size_t> o(b.facet_count());
        for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
        return o;
    }();

    Rational gap = opts.equidistant_gap.value_or(0);
    for (int attempt = 0;; ++attempt) {
        auto [eps0, t_crit] = epsilon0(b);
        NormalChain chain;
        chain.base = b;
        chain.epsilon0 = eps0;
        chain.terms = {b, dilate(b, eps0)};
        chain.steps = {ChainStep{-1, eps0 - 1, eps0, eps0}};

        Rational s = eps0;
        Rational tau = eps0 - 1;
        bool stalled = false;
        while (s < t_max && !stalled) {
            if (opts.equidistant_gap) tau = gap / s;
            while (true) {
                const Rational s_next = s * (1 + tau);
                std::vector<HPolytope> cand;
                std::vector<ChainStep> cand_steps;
                HPolytope cur = chain.terms.back();
                bool ok = true;
                for (std::size_t m : order) {
                    HPolytope nxt = shift_facet(cur, m, tau);
                    if (!validate_step(b, cur, nxt, m).passed()) {
                        ok = false;
                        break;
                    }
                    cand.push_back(nxt);
                    cand_steps.push_back(ChainStep{static_cast<int>(m), tau, s, s_next});
                    cur = nxt;
                }
                if (ok) {
                    cand_steps.back().t1 = s_next;  // round ends on a pure dilation
                    for (std::size_t i = 0; i < cand.size(); ++i) {
                        chain.terms.push_back(cand[i]);
                        chain.steps.push_back(cand_steps[i]);
                    }
                    s = s_next;
                    break;
                }
                if (opts.equidistant_gap) {
                    stalled = true;  // halve the gap and rebuild to stay equidistant
                    break;
                }
                tau /= 2;
                if (tau < opts.tau_floor)
                    throw ChainStalled("build_normal_chain: tau underflow (degenerate input?)");
            }
        }
        if (!stalled) return chain;
        gap /= 2;
        if (attempt >= opts.max_restarts || gap < opts.tau_floor)
            throw ChainStalled("build_normal_chain: equidistant gap underflow");
    }
}

// Chain-level validation: the lattice-preserving first dilation, the pure
// homothety at the end of every round, the round schedule, and every per-step
// condition. Returns a list of human-readable failures (empty == valid).
inline std::vector<std::string> validate_chain(const NormalChain& chain,
                                               const std::vector<std::size_t>* order = nullptr) {
    std::vector<std::string> failures;
    const auto& b = chain.base;
    const std::size_t L = b.facet_count();
    if (chain.terms.size() < 2) return {"chain too short"};
    if (!polytope_equal(chain.terms[1], dilate(b, chain.epsilon0)))
        failures.push_back("terms[1] != epsilon0 * base");
    if (lattice_points(chain.terms[1]) != lattice_points(b))
        failures.push_back("Z(epsilon0 * base) != Z(base)");

    for (std::size_t i = 1; i < chain.steps.size(); ++i) {
        const auto& step = chain.steps[i];
        if (step.facet < 0) {
            failures.push_back("interior step without a facet index");
            continue;
        }
        auto rep = validate_step(b, chain.terms[i], chain.terms[i + 1],
                                 static_cast<std::size_t>(step.facet));
        if (!rep.passed())
            failures.push_back("step " + std::to_string(i) + " fails validation");
    }

    // round schedule: steps 1.. come in rounds of L, each facet once, each
    // round ending on a pure dilation of the base
    if ((chain.steps.size() - 1) % L != 0)
        failures.push_back("chain does not end on a completed round");
    for (std::size_t start = 1; start + L <= chain.steps.size(); start += L) {
        std::vector<bool> seen(L, false);
        for (std::size_t j = 0; j < L; ++j) {
            int m = chain.steps[start + j].facet;
            if (m < 0 || seen[static_cast<std::size_t>(m)]) {
                failures.push_back("round at step " + std::to_string(start) +
                                   " does not cover each facet once");
                break;
            }
            if (order && static_cast<std::size_t>(m) != (*order)[j])
                failures.push_back("round at step " + std::to_string(start) +
                                   " deviates from the configured facet order");
            seen[static_cast<std::size_t>(m)] = true;
        }
        const std::size_t end_term = start + L;
        auto factor = chain.homothety_factor(end_term);
        if (!factor || !polytope_equal(chain.terms[end_term], dilate(b, *factor)))
            failures.push_back("term " + std::to_string(end_term) + " is not a pure dilation");
    }
    return failures;
}

// Descending chain B = X_0 > X_-1 > ... > X_-L = eps_{-1} B, un-shifting one
// facet per step in the psi-induced order. Z(eps_{-1} B) consists of the
// interior lattice points of B.
inline NormalChain negative_chain(const HPolytope& b_in) {
    HPolytope b = b_in;
    detail::require_chain_base(b);
    const std::size_t L = b.facet_count();
    const auto order = psi_facet_order(b);

    Rational eps = epsilon_minus1(b);
    const Rational one(1);
    for (;;) {
        NormalChain chain;
        chain.base = b;
        chain.epsilon0 = eps;
        chain.descending = true;
        chain.terms = {b};
        HPolytope cur = b;
        bool ok = true;
        for (std::size_t j = 0; j < L; ++j) {
            std::size_t m = order[j];
            std::vector<Facet> fs = cur.facets();
            fs[m].offset *= eps;  // pull the facet inward
            HPolytope nxt(b.dim(), std::move(fs));
            if (nxt.is_empty() || !nxt.is_full_dimensional() || nxt.pruned().facet_count() != L) {
                ok = false;
                break;
            }
            chain.terms.push_back(nxt);
            chain.steps.push_back(ChainStep{static_cast<int>(m), eps - 1, eps, one});
            cur = nxt;
        }
        if (ok) {
            // interior lattice points of B must be exactly what survives
            PointSet interior(b.dim());
            for (const auto& q : lattice_points(b)) {
                bool strict = true;
                for (const auto& f : b.facets())
                    if (Rational(dot(f.normal, q)) == f.offset) {
                        strict = false;
                        break;
                    }
                if (strict) interior.insert(q);
            }
            if (lattice_points(chain.terms.back()) != interior)
                throw ChainStalled("negative_chain: interior lattice postcondition failed");
            return chain;
        }
        eps = (eps + 1) / 2;
        if (1 - eps < Rational(BigInt(1), BigInt(1) << 40))
            throw ChainStalled("negative_chain: epsilon climbed to 1 without a valid chain");
    }
}

enum class ErosionClass { ChainElement, Empty, LatticeEqualsB, StrictlyInterior };

inline const char* to_string(ErosionClass c) {
    switch (c) {
        case ErosionClass::ChainElement: return "ChainElement";
        case ErosionClass::Empty: return "Empty";
        case ErosionClass::LatticeEqualsB: return "LatticeEqualsB";
        case ErosionClass::StrictlyInterior: return "StrictlyInterior";
    }
    return "?";
}

// Classify the j-fold erosion of a chain term, decided from the bracket
// (t1 - j, t2 - j) and exact lattice enumeration.
inline ErosionClass classify_erosion(const NormalChain& chain, std::size_t term_index, unsigned j) {
    const auto bracket = chain.term_bracket(term_index);
    auto eroded = erode_iter(chain.terms[term_index], chain.base, j);
    if (!eroded) return ErosionClass::Empty;
    if (bracket.first - Rational(j) >= chain.epsilon0) return ErosionClass::ChainElement;
    const PointSet ze = lattice_points(*eroded);
    const PointSet zb = lattice_points(chain.base);
    if (ze == zb) return ErosionClass::LatticeEqualsB;
    for (const auto& q : ze) {
        for (const auto& f : chain.base.facets()) {
            const Rational v(dot(f.normal, q));
            if (v < f.offset) throw Error("classify_erosion: eroded term escapes the base");
            if (v == f.offset) throw Error("classify_erosion: unclassifiable erosion");
        }
    }
    return ErosionClass::StrictlyInterior;
}

}  // namespace polymem

#endif
