#include <algorithm>
#include <cmath>
#include <vector>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/geometry.hpp"
#include "eigenbranch/parallel.hpp"

namespace eigenbranch {

namespace {

double signed_clearance(const PlanarDomain& dom, Vec2 p)
{
    return dom.contains(p) ? dom.distance_to_boundary(p) : -1.0;
}

}  // namespace

double inradius(const PlanarDomain& dom, double tol)
{
    if (!(tol > 0)) throw InvalidInput("inradius: tol must be positive");
    const double x0 = dom.min_x(), x1 = dom.max_x(), y0 = dom.min_y(), y1 = dom.max_y();
    const double step = std::sqrt((x1 - x0) * (y1 - y0) / 40000.0);
    const int nx = std::max(2, static_cast<int>(std::ceil((x1 - x0) / step)));
    const int ny = std::max(2, static_cast<int>(std::ceil((y1 - y0) / step)));
    const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;

    std::vector<double> value(static_cast<std::size_t>(nx) * ny, -1.0);
    parallel_for(value.size(), [&](std::size_t k) {
        int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
        value[k] = signed_clearance(dom, {x0 + (i + 0.5) * hx, y0 + (j + 0.5) * hy});
    });

    std::vector<std::size_t> order(value.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    const std::size_t starts = std::min<std::size_t>(24, order.size());
    std::partial_sort(order.begin(), order.begin() + starts, order.end(),
                      [&](std::size_t a, std::size_t b) { return value[a] > value[b] || (value[a] == value[b] && a < b); });

    // Compass search over 16 directions from each seed, halving the step on stalls.
    constexpr int n_dir = 16;
    std::vector<double> best(starts, -1.0);
    parallel_for(starts, [&](std::size_t s) {
        std::size_t k = order[s];
        if (value[k] <= 0) return;
        Vec2 p{x0 + (k % nx + 0.5) * hx, y0 + (k / nx + 0.5) * hy};
        double f = value[k];
        double h = std::max(hx, hy);
        while (h > 0.05 * tol) {
            bool moved = false;
            for (int d = 0; d < n_dir; ++d) {
                double t = 2 * M_PI * d / n_dir;
                Vec2 q{p.x + h * std::cos(t), p.y + h * std::sin(t)};
                double g = signed_clearance(dom, q);
                if (g > f) {
                    f = g;
                    p = q;
                    moved = true;
                }
            }
            if (!moved) h *= 0.5;
        }
        best[s] = f;
    });
    return *std::max_element(best.begin(), best.end());
}

}  // namespace eigenbranch
