#ifndef POLYMEM_LATTICE_HPP
#define POLYMEM_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "polymem/errors.hpp"
#include "polymem/rational.hpp"

namespace polymem {

using Point = std::vector<std::int64_t>;   // integer lattice point
using QPoint = std::vector<Rational>;      // rational point (vertices, centers)

inline Point add(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Point sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline std::int64_t dot(const Point& a, const Point& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const Point& a, const QPoint& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

// Finite set of integer lattice points, kept sorted lexicographically.
// Lex order is translation-stable, which makes sampled coefficient streams
// and serialized artifacts reproducible.
class PointSet {
public:
    PointSet() : dim_(0) {}
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<Point> pts) : dim_(dim), pts_(std::move(pts)) {
        normalize();
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const std::vector<Point>& points() const { return pts_; }
    const Point& operator[](std::size_t i) const { return pts_[i]; }

    void insert(const Point& p) {
        check_dim(p);
        auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
        if (it == pts_.end() || *it != p) pts_.insert(it, p);
    }

    bool contains(const Point& p) const {
        return std::binary_search(pts_.begin(), pts_.end(), p);
    }

    bool is_subset_of(const PointSet& other) const {
        for (const auto& p : pts_)
            if (!other.contains(p)) return false;
        return true;
    }

    PointSet translated(const Point& v) const {
        PointSet r(dim_);
        for (const auto& p : pts_) r.pts_.push_back(add(p, v));
        // lex order is preserved by translation
        return r;
    }

    bool operator==(const PointSet& o) const { return dim_ == o.dim_ && pts_ == o.pts_; }
    bool operator!=(const PointSet& o) const { return !(*this == o); }

    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

private:
    void check_dim(const Point& p) const {
        if (p.size() != dim_) throw DimensionMismatch("PointSet: point of wrong dimension");
    }
    void normalize() {
        for (const auto& p : pts_) check_dim(p);
        std::sort(pts_.begin(), pts_.end());
        pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
    }

    std::size_t dim_;
    std::vector<Point> pts_;
};

inline PointSet set_union(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("set_union: dimension mismatch");
    std::vector<Point> pts(a.begin(), a.end());
    pts.insert(pts.end(), b.begin(), b.end());
    return PointSet(a.dim(), std::move(pts));
}

inline PointSet set_difference(const PointSet& a, const PointSet& b) {
    PointSet r(a.dim());
    for (const auto& p : a)
        if (!b.contains(p)) r.insert(p);
    return r;
}

inline PointSet minkowski(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("minkowski: dimension mismatch");
    std::vector<Point> pts;
    pts.reserve(a.size() * b.size());
    for (const auto& p : a)
        for (const auto& q : b) pts.push_back(add(p, q));
    return PointSet(a.dim(), std::move(pts));
}

// Point-set erosion A (-) S = { v in Z^n : v + S subseteq A } computed by
// definition. A may be non-convex (it may have holes), so the H-representation
// shortcut is not valid here.
inline PointSet erode_points(const PointSet& a, const PointSet& s) {
    if (a.dim() != s.dim()) throw DimensionMismatch("erode_points: dimension mismatch");
    PointSet r(a.dim());
    if (s.empty() || a.empty()) return r;
    const Point& anchor = s[0];
    std::set<Point> candidates;
    for (const auto& p : a) candidates.insert(sub(p, anchor));
    for (const auto& v : candidates) {
        bool ok = true;
        for (const auto& q : s) {
            if (!a.contains(add(v, q))) {
                ok = false;
                break;
            }
        }
        if (ok) r.insert(v);
    }
    return r;
}

// Subset of S minimizing the inner product with direction v.
inline PointSet face_points(const PointSet& s, const Point& v) {
    bool zero = true;
    for (auto c : v)
        if (c != 0) zero = false;
    if (zero) throw ZeroDirection("face: direction must be nonzero");
    if (v.size() != s.dim()) throw DimensionMismatch("face: direction of wrong dimension");
    PointSet r(s.dim());
    if (s.empty()) return r;
    std::int64_t best = dot(v, s[0]);
    for (const auto& p : s) best = std::min(best, dot(v, p));
    for (const auto& p : s)
        if (dot(v, p) == best) r.insert(p);
    return r;
}

inline std::int64_t vector_gcd(const std::vector<std::int64_t>& v) {
    std::int64_t g = 0;
    for (auto c : v) g = std::gcd(g, c < 0 ? -c : c);
    return g;
}

}  // namespace polymem

#endif
