#ifndef POLYMEM_POLYTOPE_HPP
#define POLYMEM_POLYTOPE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "polymem/errors.hpp"
#include "polymem/lattice.hpp"
#include "polymem/qlinalg.hpp"
#include "polymem/rational.hpp"

namespace polymem {

// One halfspace { x : x.normal >= offset }. Normals point into the polytope,
// so the facet is the argmin of x.normal over the body.
struct Facet {
    Point normal;
    Rational offset;

    bool operator==(const Facet& o) const { return normal == o.normal && offset == o.offset; }
};

// Bounded rational polytope in H-representation, dimension n <= 3 officially
// (everything is generic in n; the lattice scan is what sets the practical
// limit). Facets are kept with primitive integer normals, duplicates merged,
// sorted by normal, so polytopes over the same normal fan align by index.
class HPolytope {
public:
    HPolytope() : dim_(0) {}
    HPolytope(std::size_t dim, std::vector<Facet> facets) : dim_(dim), facets_(std::move(facets)) {
        canonicalize();
    }

    std::size_t dim() const { return dim_; }
    const std::vector<Facet>& facets() const { return facets_; }
    std::size_t facet_count() const { return facets_.size(); }

    bool contains(const QPoint& x) const {
        for (const auto& f : facets_)
            if (dot(f.normal, x) < f.offset) return false;
        return true;
    }
    bool contains(const Point& p) const {
        for (const auto& f : facets_)
            if (Rational(dot(f.normal, p)) < f.offset) return false;
        return true;
    }

    // All vertices, each the unique solution of n facet equalities that is
    // feasible for the rest. Exact and deduplicated; sorted for canonical
    // comparisons. Throws Unbounded when the recession cone is nontrivial.
    std::vector<QPoint> vertices() const {
        if (recession_nontrivial()) throw Unbounded("polytope is not bounded");
        std::vector<QPoint> verts;
        const std::size_t L = facets_.size();
        if (L < dim_) return verts;
        std::vector<std::size_t> idx(dim_);
        enumerate_subsets(L, dim_, idx, 0, 0, [&](const std::vector<std::size_t>& sel) {
            QMatrix m(dim_, dim_);
            QVec b(dim_);
            for (std::size_t r = 0; r < dim_; ++r) {
                for (std::size_t c = 0; c < dim_; ++c)
                    m.at(r, c) = Rational(facets_[sel[r]].normal[c]);
                b[r] = facets_[sel[r]].offset;
            }
            auto x = m.solve_unique(b);
            if (x && contains(*x)) verts.push_back(*x);
        });
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        return verts;
    }

    bool is_empty() const { return vertices().empty(); }

    // Affine dimension of the vertex set: n for full-dimensional bodies,
    // less for the degenerate points/segments that iterated erosion produces.
    int affine_dim() const {
        auto verts = vertices();
        if (verts.empty()) return -1;
        if (verts.size() == 1) return 0;
        QMatrix m(verts.size() - 1, dim_);
        for (std::size_t i = 1; i < verts.size(); ++i)
            for (std::size_t j = 0; j < dim_; ++j) m.at(i - 1, j) = verts[i][j] - verts[0][j];
        return static_cast<int>(m.rank());
    }

    bool is_full_dimensional() const { return affine_dim() == static_cast<int>(dim_); }

    bool is_integral() const {
        for (const auto& v : vertices())
            for (const auto& c : v)
                if (!is_integer(c)) return false;
        return true;
    }

    // min of x.a over the polytope (attained at a vertex).
    Rational support_min(const Point& a) const {
        auto verts = vertices();
        if (verts.empty()) throw Error("support_min of empty polytope");
        Rational best = dot(a, verts[0]);
        for (const auto& v : verts) best = std::min(best, dot(a, v));
        return best;
    }

    // Copy with facets that are not tight anywhere removed (min over the body
    // strictly above the offset). Tight-but-lower-dimensional contacts are
    // also dropped for full-dimensional bodies.
    HPolytope pruned() const {
        auto verts = vertices();
        if (verts.empty()) return *this;
        const bool fulldim = is_full_dimensional();
        std::vector<Facet> kept;
        for (const auto& f : facets_) {
            std::vector<QPoint> tight;
            Rational best = dot(f.normal, verts[0]);
            for (const auto& v : verts) best = std::min(best, dot(f.normal, v));
            if (best > f.offset) continue;
            for (const auto& v : verts)
                if (dot(f.normal, v) == f.offset) tight.push_back(v);
            if (fulldim && dim_ >= 2) {
                // facet = tight set of affine dimension n-1
                if (tight.size() < dim_) continue;
                QMatrix m(tight.size() - 1, dim_);
                for (std::size_t i = 1; i < tight.size(); ++i)
                    for (std::size_t j = 0; j < dim_; ++j)
                        m.at(i - 1, j) = tight[i][j] - tight[0][j];
                if (m.rank() != dim_ - 1) continue;
            }
            kept.push_back(f);
        }
        return HPolytope(dim_, std::move(kept));
    }

    bool origin_interior() const {
        for (const auto& f : facets_)
            if (f.offset >= 0) return false;
        return true;
    }

private:
    bool recession_nontrivial() const {
        const std::size_t L = facets_.size();
        QMatrix all(L == 0 ? 1 : L, dim_);
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t j = 0; j < dim_; ++j) all.at(i, j) = Rational(facets_[i].normal[j]);
        if (all.rank() < dim_) return true;  // cone contains a line
        // pointed cone: a nonzero ray lies on n-1 independent active constraints
        if (dim_ == 0) return false;
        bool found = false;
        std::vector<std::size_t> idx(dim_ - 1);
        enumerate_subsets(L, dim_ - 1, idx, 0, 0, [&](const std::vector<std::size_t>& sel) {
            if (found) return;
            QMatrix m(sel.empty() ? 1 : sel.size(), dim_);
            for (std::size_t r = 0; r < sel.size(); ++r)
                for (std::size_t c = 0; c < dim_; ++c)
                    m.at(r, c) = Rational(facets_[sel[r]].normal[c]);
            auto null_basis = m.kernel_basis();
            if (null_basis.size() != 1) return;
            for (int sign : {1, -1}) {
                bool ok = true;
                for (const auto& f : facets_) {
                    Rational d = 0;
                    for (std::size_t j = 0; j < dim_; ++j)
                        d += Rational(f.normal[j]) * null_basis[0][j] * sign;
                    if (d < 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) found = true;
            }
        });
        return found;
    }

    template <typename F>
    static void enumerate_subsets(std::size_t n, std::size_t k, std::vector<std::size_t>& idx,
                                  std::size_t pos, std::size_t start, F&& fn) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i + (k - pos) <= n; ++i) {
            idx[pos] = i;
            enumerate_subsets(n, k, idx, pos + 1, i + 1, fn);
        }
    }

    void canonicalize() {
        std::map<Point, Rational> merged;
        for (auto& f : facets_) {
            if (f.normal.size() != dim_)
                throw DimensionMismatch("HPolytope: facet normal of wrong dimension");
            std::int64_t g = vector_gcd(f.normal);
            if (g == 0) throw InputError("HPolytope: zero facet normal");
            Point prim(f.normal);
            for (auto& c : prim) c /= g;
            Rational off = f.offset / g;
            auto it = merged.find(prim);
            if (it == merged.end())
                merged.emplace(prim, off);
            else
                it->second = std::max(it->second, off);  // tighter constraint wins
        }
        facets_.clear();
        for (auto& [nrm, off] : merged) facets_.push_back(Facet{nrm, off});
    }

    std::size_t dim_;
    std::vector<Facet> facets_;
};

inline bool polytope_equal(const HPolytope& a, const HPolytope& b) {
    if (a.dim() != b.dim()) return false;
    return a.vertices() == b.vertices();
}

// Homothety about the origin: { x : x.a_i >= t b_i }. The caller arranges the
// coordinates so that the origin is where it wants the center.
inline HPolytope dilate(const HPolytope& x, const Rational& t) {
    if (t <= 0) throw NonPositiveFactor("dilate: factor must be positive");
    std::vector<Facet> fs = x.facets();
    for (auto& f : fs) f.offset *= t;
    return HPolytope(x.dim(), std::move(fs));
}

inline HPolytope translate(const HPolytope& x, const Point& v) {
    std::vector<Facet> fs = x.facets();
    for (auto& f : fs) f.offset += Rational(dot(f.normal, v));
    return HPolytope(x.dim(), std::move(fs));
}

inline HPolytope translate(const HPolytope& x, const QPoint& v) {
    std::vector<Facet> fs = x.facets();
    for (auto& f : fs) f.offset += dot(f.normal, v);
    return HPolytope(x.dim(), std::move(fs));
}

// X (-) B = { x : x + B subseteq X }, per facet: b_i - min_{v in B} a_i.v.
// Empty is a normal outcome.
inline std::optional<HPolytope> erode(const HPolytope& x, const HPolytope& b) {
    if (x.dim() != b.dim()) throw DimensionMismatch("erode: dimension mismatch");
    auto bverts = b.vertices();
    if (bverts.empty()) throw Error("erode: eroding body is empty");
    std::vector<Facet> fs = x.facets();
    for (auto& f : fs) {
        Rational m = dot(f.normal, bverts[0]);
        for (const auto& v : bverts) m = std::min(m, dot(f.normal, v));
        f.offset -= m;
    }
    HPolytope r(x.dim(), std::move(fs));
    if (r.is_empty()) return std::nullopt;
    return r;
}

inline std::optional<HPolytope> erode_iter(const HPolytope& x, const HPolytope& b, unsigned j) {
    if (j < 1) throw InputError("erode_iter: j must be >= 1");
    std::optional<HPolytope> cur = x;
    for (unsigned i = 0; i < j; ++i) {
        cur = erode(*cur, b);
        if (!cur) return std::nullopt;
    }
    return cur;
}

namespace detail {

inline Point cross3(const Point& a, const Point& b) {
    return Point{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero(const Point& p) {
    for (auto c : p)
        if (c != 0) return false;
    return true;
}

inline Point primitive(Point p) {
    std::int64_t g = vector_gcd(p);
    if (g > 1)
        for (auto& c : p) c /= g;
    return p;
}

// Candidate edge directions: cross products of facet-normal pairs. A superset
// of the true edge directions, which is all the Minkowski construction needs.
inline std::vector<Point> edge_direction_candidates(const HPolytope& x) {
    std::vector<Point> dirs;
    const auto& fs = x.facets();
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
            Point d = cross3(fs[i].normal, fs[j].normal);
            if (!is_zero(d)) dirs.push_back(primitive(d));
        }
    return dirs;
}

}  // namespace detail

// Minkowski sum in H-representation. Facet normals of X+Y come from X, from Y,
// or (in 3D) from an edge-of-X + edge-of-Y combination; offsets are the exact
// support values min_X + min_Y. Vertices of the sum are sums of vertices, so
// redundant candidates are filtered against the pairwise vertex sums instead
// of re-enumerating facet subsets. Works for n <= 3.
inline HPolytope minkowski_sum(const HPolytope& x, const HPolytope& y) {
    if (x.dim() != y.dim()) throw DimensionMismatch("minkowski_sum: dimension mismatch");
    const std::size_t n = x.dim();
    if (n > 3) throw WrongDimension("minkowski_sum: supported for n <= 3");
    auto vx = x.vertices();
    auto vy = y.vertices();
    if (vx.empty() || vy.empty()) throw Error("minkowski_sum: empty operand");

    std::vector<Point> candidates;
    for (const auto& f : x.facets()) candidates.push_back(detail::primitive(f.normal));
    for (const auto& f : y.facets()) candidates.push_back(detail::primitive(f.normal));
    if (n == 3) {
        auto ex = detail::edge_direction_candidates(x);
        auto ey = detail::edge_direction_candidates(y);
        for (const auto& a : ex)
            for (const auto& b : ey) {
                Point d = detail::cross3(a, b);
                if (detail::is_zero(d)) continue;
                d = detail::primitive(d);
                candidates.push_back(d);
                Point neg(d);
                for (auto& c : neg) c = -c;
                candidates.push_back(neg);
            }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto support = [](const std::vector<QPoint>& verts, const Point& a) {
        Rational m = dot(a, verts[0]);
        for (const auto& v : verts) m = std::min(m, dot(a, v));
        return m;
    };
    std::vector<Facet> fs;
    for (const auto& a : candidates) fs.push_back(Facet{a, support(vx, a) + support(vy, a)});

    // candidate vertices: pairwise sums that have n independent tight normals
    std::vector<QPoint> pts;
    for (const auto& px : vx)
        for (const auto& py : vy) {
            QPoint s(n);
            for (std::size_t j = 0; j < n; ++j) s[j] = px[j] + py[j];
            pts.push_back(std::move(s));
        }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<QPoint> sum_verts;
    for (const auto& p : pts) {
        std::vector<const Facet*> tight;
        for (const auto& f : fs)
            if (dot(f.normal, p) == f.offset) tight.push_back(&f);
        if (tight.size() < n) continue;
        QMatrix m(tight.size(), n);
        for (std::size_t i = 0; i < tight.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rational(tight[i]->normal[j]);
        if (m.rank() == n) sum_verts.push_back(p);
    }

    // sum is full-dimensional iff its vertex set is; only then can the
    // facet = (n-1)-dimensional-contact rule prune safely
    bool fulldim = false;
    if (sum_verts.size() > n) {
        QMatrix m(sum_verts.size() - 1, n);
        for (std::size_t i = 1; i < sum_verts.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i - 1, j) = sum_verts[i][j] - sum_verts[0][j];
        fulldim = m.rank() == n;
    }
    if (!fulldim) return HPolytope(n, std::move(fs));

    std::vector<Facet> kept;
    for (const auto& f : fs) {
        std::vector<QPoint> tight;
        for (const auto& v : sum_verts)
            if (dot(f.normal, v) == f.offset) tight.push_back(v);
        if (tight.empty()) continue;
        if (n >= 2) {
            if (tight.size() < n) continue;
            QMatrix m(tight.size() - 1, n);
            for (std::size_t i = 1; i < tight.size(); ++i)
                for (std::size_t j = 0; j < n; ++j) m.at(i - 1, j) = tight[i][j] - tight[0][j];
            if (m.rank() != n - 1) continue;
        }
        kept.push_back(f);
    }
    return HPolytope(n, std::move(kept));
}

// Exact enumeration of X cap Z^n: bounding-box scan with exact feasibility.
inline PointSet lattice_points(const HPolytope& x) {
    auto verts = x.vertices();  // throws Unbounded when applicable
    PointSet r(x.dim());
    if (verts.empty()) return r;
    const std::size_t n = x.dim();
    std::vector<std::int64_t> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational mn = verts[0][j], mx = verts[0][j];
        for (const auto& v : verts) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = to_i64(ceil_int(mn));
        hi[j] = to_i64(floor_int(mx));
    }
    BigInt cells = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (hi[j] < lo[j]) return r;
        cells *= BigInt(hi[j] - lo[j] + 1);
    }
    if (cells > 20'000'000) throw Error("lattice_points: scan box too large");
    Point q(n, 0);
    std::vector<std::int64_t> cur(lo);
    while (true) {
        for (std::size_t j = 0; j < n; ++j) q[j] = cur[j];
        if (x.contains(q)) r.insert(q);
        std::size_t j = 0;
        while (j < n && ++cur[j] > hi[j]) {
            cur[j] = lo[j];
            ++j;
        }
        if (j == n) break;
    }
    return r;
}

inline PointSet face(const HPolytope& x, const Point& v) { return face_points(lattice_points(x), v); }

namespace detail {

// Exact area of a polygon given by its (unordered) vertex set: order the
// extreme points angularly about the centroid, then shoelace.
inline Rational polygon_area(std::vector<QPoint> verts) {
    if (verts.size() < 3) return Rational(0);
    QPoint c{Rational(0), Rational(0)};
    for (const auto& v : verts) {
        c[0] += v[0];
        c[1] += v[1];
    }
    c[0] /= Rational(static_cast<std::int64_t>(verts.size()));
    c[1] /= Rational(static_cast<std::int64_t>(verts.size()));
    auto half = [&](const QPoint& p) {
        Rational dy = p[1] - c[1];
        Rational dx = p[0] - c[0];
        return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    };
    std::sort(verts.begin(), verts.end(), [&](const QPoint& p, const QPoint& q) {
        int hp = half(p), hq = half(q);
        if (hp != hq) return hp < hq;
        Rational cr = (p[0] - c[0]) * (q[1] - c[1]) - (p[1] - c[1]) * (q[0] - c[0]);
        if (cr != 0) return cr > 0;
        return p < q;
    });
    Rational twice = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto& p = verts[i];
        const auto& q = verts[(i + 1) % verts.size()];
        twice += p[0] * q[1] - p[1] * q[0];
    }
    if (twice < 0) twice = -twice;
    return twice / 2;
}

}  // namespace detail

// Generic root count of a pair of supports in the plane:
// area(A+B) - area(A) - area(B), exact.
inline std::int64_t bernstein_number_2d(const HPolytope& a, const HPolytope& b) {
    if (a.dim() != 2 || b.dim() != 2) throw WrongDimension("bernstein_number_2d: n must be 2");
    HPolytope s = minkowski_sum(a, b);
    Rational val = detail::polygon_area(s.vertices()) - detail::polygon_area(a.vertices()) -
                   detail::polygon_area(b.vertices());
    if (!is_integer(val)) throw Error("bernstein_number_2d: non-integer result (non-lattice input?)");
    return to_i64(rat_num(val));
}

namespace detail {

template <typename PointRange>
inline Rational min_enclosing_factor_impl(const PointRange& pts, const HPolytope& b) {
    for (const auto& f : b.facets())
        if (f.offset > 0)
            throw OriginNotInterior("min_enclosing_factor: origin must lie in B (translate first)");
    Rational s = 0;
    for (const auto& f : b.facets()) {
        for (const auto& p : pts) {
            Rational v = dot(f.normal, p);
            if (f.offset == 0) {
                // facet through the origin never moves under dilation
                if (v < 0)
                    throw OriginNotInterior(
                        "min_enclosing_factor: A violates a facet through the origin");
            } else {
                s = std::max(s, v / f.offset);  // offset < 0 flips the division
            }
        }
    }
    return s;
}

}  // namespace detail

// Least s >= 0 with A subseteq sB (dilation about the origin).
inline Rational min_enclosing_factor(const PointSet& a, const HPolytope& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("min_enclosing_factor: dimension mismatch");
    return detail::min_enclosing_factor_impl(a.points(), b);
}

inline Rational min_enclosing_factor(const HPolytope& a, const HPolytope& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("min_enclosing_factor: dimension mismatch");
    return detail::min_enclosing_factor_impl(a.vertices(), b);
}

// Convex hull of a planar lattice set in H-representation (monotone chain).
// Degenerate hulls (point, segment) come back as flagged lower-dimensional
// bodies built from opposite facet pairs.
inline HPolytope conv_hull_2d(const PointSet& pts) {
    if (pts.dim() != 2) throw WrongDimension("conv_hull_2d: n must be 2");
    if (pts.empty()) throw Error("conv_hull_2d: empty point set");
    std::vector<Point> p(pts.begin(), pts.end());  // already lex sorted
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Point> hull(2 * p.size());
    std::size_t h = 0;
    for (const auto& q : p) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], q) <= 0) --h;
        hull[h++] = q;
    }
    const std::size_t lower = h + 1;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], *it) <= 0) --h;
        hull[h++] = *it;
    }
    hull.resize(h > 1 ? h - 1 : h);  // counterclockwise, no repeated endpoint

    std::vector<Facet> fs;
    if (hull.size() == 1) {
        const Point& q = hull[0];
        fs.push_back(Facet{{1, 0}, Rational(q[0])});
        fs.push_back(Facet{{-1, 0}, Rational(-q[0])});
        fs.push_back(Facet{{0, 1}, Rational(q[1])});
        fs.push_back(Facet{{0, -1}, Rational(-q[1])});
    } else if (hull.size() == 2) {
        const Point d = detail::primitive(sub(hull[1], hull[0]));
        const Point perp{-d[1], d[0]};
        const Point nd{-d[0], -d[1]};
        const Point nperp{d[1], -d[0]};
        fs.push_back(Facet{d, Rational(dot(d, hull[0]))});
        fs.push_back(Facet{nd, Rational(dot(nd, hull[1]))});
        fs.push_back(Facet{perp, Rational(dot(perp, hull[0]))});
        fs.push_back(Facet{nperp, Rational(dot(nperp, hull[0]))});
    } else {
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const Point& a = hull[i];
            const Point& b = hull[(i + 1) % hull.size()];
            const Point edge = sub(b, a);
            const Point inward = detail::primitive(Point{-edge[1], edge[0]});
            fs.push_back(Facet{inward, Rational(dot(inward, a))});
        }
    }
    return HPolytope(2, std::move(fs));
}

// Convenience builders for the test and CLI fixtures.
inline HPolytope box(const std::vector<std::pair<std::int64_t, std::int64_t>>& bounds) {
    const std::size_t n = bounds.size();
    std::vector<Facet> fs;
    for (std::size_t j = 0; j < n; ++j) {
        Point e(n, 0);
        e[j] = 1;
        fs.push_back(Facet{e, Rational(bounds[j].first)});
        Point ne(n, 0);
        ne[j] = -1;
        fs.push_back(Facet{ne, Rational(-bounds[j].second)});
    }
    return HPolytope(n, std::move(fs));
}

// d * (standard simplex): { x_i >= 0, sum x_i <= d } in dimension n.
inline HPolytope standard_simplex(std::size_t n, std::int64_t d = 1) {
    std::vector<Facet> fs;
    for (std::size_t j = 0; j < n; ++j) {
        Point e(n, 0);
        e[j] = 1;
        fs.push_back(Facet{e, Rational(0)});
    }
    Point ones(n, -1);
    fs.push_back(Facet{ones, Rational(-d)});
    return HPolytope(n, std::move(fs));
}

}  // namespace polymem

#endif
