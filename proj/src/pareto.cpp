#include "morlax/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "morlax/errors.hpp"
#include "morlax/simplex.hpp"

namespace morlax {

namespace {

void check_uniform_dim(const std::vector<ObjectiveVector>& points) {
    if (points.empty()) return;
    const std::size_t m = points.front().size();
    if (m == 0) throw ShapeError("objective vectors must be non-empty");
    for (const ObjectiveVector& p : points)
        if (p.size() != m)
            throw ShapeError("objective vectors have mixed lengths");
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size() || a.empty())
        throw ShapeError("dominates: length mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strict = true;
    }
    return strict;
}

std::vector<ObjectiveVector> nondominated_filter(
    const std::vector<ObjectiveVector>& points) {
    check_uniform_dim(points);
    const std::size_t n = points.size();
    if (n == 0) return {};

    // Exact duplicates collapse to the first occurrence.
    std::vector<std::size_t> uniq;
    uniq.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool dup = false;
        for (std::size_t j : uniq)
            if (points[j] == points[i]) { dup = true; break; }
        if (!dup) uniq.push_back(i);
    }

    // Visit in descending coordinate-sum order: any dominator of p has a
    // strictly larger sum, so testing against already-accepted points
    // suffices (dominance is transitive).
    std::vector<double> sums(n, 0.0);
    for (std::size_t i : uniq)
        sums[i] = std::accumulate(points[i].begin(), points[i].end(), 0.0);
    std::vector<std::size_t> order = uniq;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sums[a] > sums[b]; });

    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
        bool dominated = false;
        for (std::size_t j : kept)
            if (dominates(points[j], points[i])) { dominated = true; break; }
        if (!dominated) kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());

    std::vector<ObjectiveVector> out;
    out.reserve(kept.size());
    for (std::size_t i : kept) out.push_back(points[i]);
    return out;
}

std::vector<ObjectiveVector> linear_dominance_filter(
    const std::vector<ObjectiveVector>& points) {
    check_uniform_dim(points);
    if (points.empty()) return {};
    const std::size_t m = points.front().size();

    // Dominated points never uniquely attain a nonnegative-weight max;
    // pre-filtering also removes degenerate axis ties.
    std::vector<ObjectiveVector> nd = nondominated_filter(points);
    if (nd.size() <= 2 || m == 1) return nd;

    if (m == 2) {
        // Upper hull of the nondominated set, collinear points kept: these
        // are exactly the points that tie max_w w^T J for some simplex w.
        // nd is duplicate-free and mutually nondominated, so sorting by J1
        // ascending makes J2 strictly descending.
        std::vector<std::size_t> order(nd.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return nd[a][0] < nd[b][0];
        });
        std::vector<std::size_t> hull;
        for (std::size_t idx : order) {
            while (hull.size() >= 2) {
                const ObjectiveVector& p1 = nd[hull[hull.size() - 2]];
                const ObjectiveVector& p2 = nd[hull[hull.size() - 1]];
                const ObjectiveVector& p3 = nd[idx];
                const double cross = (p2[0] - p1[0]) * (p3[1] - p2[1]) -
                                     (p2[1] - p1[1]) * (p3[0] - p2[0]);
                // cross > 0: p2 lies strictly below the chord p1-p3, so no
                // weight vector prefers it; collinear (== 0) ties and stays.
                if (cross > 0.0) hull.pop_back(); else break;
            }
            hull.push_back(idx);
        }
        std::sort(hull.begin(), hull.end());
        std::vector<ObjectiveVector> out;
        out.reserve(hull.size());
        for (std::size_t i : hull) out.push_back(nd[i]);
        return out;
    }

    // m >= 3: dense sweep over simplex weights; a point survives if it ties
    // the maximum scalarization for some sampled weight.
    const int resolution = 60;
    std::vector<TradeoffVector> grid =
        simplex_grid(static_cast<int>(m), resolution);
    std::vector<char> keep(nd.size(), 0);
    for (const TradeoffVector& w : grid) {
        double best = -std::numeric_limits<double>::infinity();
        for (const ObjectiveVector& p : nd)
            best = std::max(best, w.dot(p));
        const double tol = 1e-9 * std::max(1.0, std::abs(best));
        for (std::size_t i = 0; i < nd.size(); ++i)
            if (w.dot(nd[i]) >= best - tol) keep[i] = 1;
    }
    std::vector<ObjectiveVector> out;
    for (std::size_t i = 0; i < nd.size(); ++i)
        if (keep[i]) out.push_back(nd[i]);
    return out;
}

namespace {

// Hypervolume by recursive slicing along the last objective. `pts` must be
// clipped to the reference already.
double hv_recursive(std::vector<ObjectiveVector> pts,
                    const ObjectiveVector& ref, std::size_t m) {
    pts = nondominated_filter(pts);
    if (pts.empty()) return 0.0;
    if (m == 1) {
        double best = ref[0];
        for (const ObjectiveVector& p : pts) best = std::max(best, p[0]);
        return best - ref[0];
    }
    if (m == 2) {
        // Sweep x descending; nondominated 2-D points have y ascending.
        std::sort(pts.begin(), pts.end(),
                  [](const ObjectiveVector& a, const ObjectiveVector& b) {
                      return a[0] > b[0];
                  });
        double area = 0.0, y_prev = ref[1];
        for (const ObjectiveVector& p : pts) {
            area += (p[0] - ref[0]) * (p[1] - y_prev);
            y_prev = p[1];
        }
        return area;
    }

    // Slice along objective m-1 between consecutive distinct levels.
    std::sort(pts.begin(), pts.end(),
              [m](const ObjectiveVector& a, const ObjectiveVector& b) {
                  return a[m - 1] > b[m - 1];
              });
    ObjectiveVector sub_ref(ref.begin(), ref.end() - 1);
    double volume = 0.0;
    std::vector<ObjectiveVector> active;
    std::size_t i = 0;
    while (i < pts.size()) {
        const double z_top = pts[i][m - 1];
        while (i < pts.size() && pts[i][m - 1] == z_top) {
            active.emplace_back(pts[i].begin(), pts[i].end() - 1);
            ++i;
        }
        const double z_bottom = (i < pts.size()) ? pts[i][m - 1] : ref[m - 1];
        const double height = z_top - z_bottom;
        if (height > 0.0)
            volume += height * hv_recursive(active, sub_ref, m - 1);
    }
    return volume;
}

std::vector<ObjectiveVector> clip_to_reference(const ParetoFront& front,
                                               int* clipped) {
    std::vector<ObjectiveVector> pts;
    pts.reserve(front.points.size());
    *clipped = 0;
    for (const ObjectiveVector& p : front.points) {
        if (p.size() != front.reference.size())
            throw ShapeError("hypervolume: point/reference length mismatch");
        bool ok = true;
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p[j] < front.reference[j]) { ok = false; break; }
        if (ok) pts.push_back(p); else ++(*clipped);
    }
    return pts;
}

}  // namespace

HypervolumeResult hypervolume_detailed(const ParetoFront& front,
                                       std::uint64_t mc_samples,
                                       std::uint64_t mc_seed) {
    if (front.reference.empty())
        throw ShapeError("hypervolume: empty reference point");
    check_uniform_dim(front.points);
    HypervolumeResult res;
    std::vector<ObjectiveVector> pts = clip_to_reference(front, &res.clipped);
    if (pts.empty()) return res;  // empty front: volume 0 (caller may warn)

    const std::size_t m = front.reference.size();
    if (m <= 4) {
        res.value = hv_recursive(std::move(pts), front.reference, m);
        res.exact = true;
    } else {
        ParetoFront clipped_front{std::move(pts), front.reference};
        res.value = hypervolume_mc(clipped_front, mc_samples, Rng(mc_seed),
                                   &res.stderr_est);
        res.exact = false;
    }
    return res;
}

double hypervolume(const ParetoFront& front) {
    return hypervolume_detailed(front).value;
}

double hypervolume_mc(const ParetoFront& front, std::uint64_t samples,
                      Rng rng, double* stderr_out) {
    if (front.reference.empty())
        throw ShapeError("hypervolume_mc: empty reference point");
    if (samples == 0) throw ShapeError("hypervolume_mc: samples must be > 0");
    int clipped = 0;
    std::vector<ObjectiveVector> pts = clip_to_reference(front, &clipped);
    if (pts.empty()) {
        if (stderr_out) *stderr_out = 0.0;
        return 0.0;
    }
    const std::size_t m = front.reference.size();
    ObjectiveVector hi(m);
    for (std::size_t j = 0; j < m; ++j) {
        hi[j] = front.reference[j];
        for (const ObjectiveVector& p : pts) hi[j] = std::max(hi[j], p[j]);
    }
    double box = 1.0;
    for (std::size_t j = 0; j < m; ++j) box *= hi[j] - front.reference[j];
    if (box == 0.0) {
        if (stderr_out) *stderr_out = 0.0;
        return 0.0;
    }

    std::uint64_t covered = 0;
    ObjectiveVector x(m);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t j = 0; j < m; ++j)
            x[j] = front.reference[j] + (hi[j] - front.reference[j]) * rng.next_double();
        for (const ObjectiveVector& p : pts) {
            bool inside = true;
            for (std::size_t j = 0; j < m; ++j)
                if (x[j] > p[j]) { inside = false; break; }
            if (inside) { ++covered; break; }
        }
    }
    const double frac = static_cast<double>(covered) / static_cast<double>(samples);
    if (stderr_out)
        *stderr_out = box * std::sqrt(frac * (1.0 - frac) /
                                      static_cast<double>(samples));
    return box * frac;
}

double sparsity(const ParetoFront& front) {
    check_uniform_dim(front.points);
    const std::size_t n = front.points.size();
    if (n < 2)
        throw DomainError("sparsity undefined for fronts with < 2 points");
    const std::size_t m = front.points.front().size();
    double total = 0.0;
    std::vector<double> vals(n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) vals[i] = front.points[i][j];
        std::sort(vals.begin(), vals.end());
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double g = vals[i + 1] - vals[i];
            acc += g * g;
        }
        total += acc / static_cast<double>(n - 1);
    }
    return total / static_cast<double>(m);
}

}  // namespace morlax
