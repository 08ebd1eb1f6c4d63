#include "levyswarm/cell_list.hpp"

#include <algorithm>
#include <cmath>

#include "levyswarm/errors.hpp"

namespace levyswarm {

CellList::CellList(const std::vector<double>& xs, const std::vector<double>& ys, double lx,
                   double ly, double radius, bool periodic)
    : xs_(xs), ys_(ys), lx_(lx), ly_(ly), radius_(radius), periodic_(periodic) {
    if (xs.size() != ys.size())
        throw ValidationError("cell list coordinate arrays differ in length");
    if (!(lx > 0.0) || !(ly > 0.0)) throw ValidationError("cell list box must be positive");
    if (!(radius > 0.0)) throw ValidationError("cell list radius must be positive");

    ncx_ = static_cast<int>(std::floor(lx / radius));
    ncy_ = static_cast<int>(std::floor(ly / radius));
    if (ncx_ < 4 || ncy_ < 4) {
        brute_ = true;
        return;
    }
    cw_ = lx / ncx_;
    ch_ = ly / ncy_;
    head_.assign(static_cast<std::size_t>(ncx_) * ncy_, -1);
    next_.assign(xs.size(), -1);
    // serial build: insertion order fixed, so traversal order is reproducible
    for (std::size_t p = 0; p < xs.size(); ++p) {
        const int c = cell_of(xs[p], ys[p]);
        next_[p] = head_[c];
        head_[c] = static_cast<int>(p);
    }
}

int CellList::cell_of(double x, double y) const {
    int cx = static_cast<int>(std::floor(x / cw_));
    int cy = static_cast<int>(std::floor(y / ch_));
    cx = std::clamp(cx, 0, ncx_ - 1);
    cy = std::clamp(cy, 0, ncy_ - 1);
    return cy * ncx_ + cx;
}

void CellList::displacement(double xi, double yi, std::size_t j, double& dx,
                            double& dy) const {
    dx = xs_[j] - xi;
    dy = ys_[j] - yi;
    if (periodic_) {
        if (dx > 0.5 * lx_) dx -= lx_;
        if (dx < -0.5 * lx_) dx += lx_;
        if (dy > 0.5 * ly_) dy -= ly_;
        if (dy < -0.5 * ly_) dy += ly_;
    }
}

void CellList::for_neighbors_of_point(
    double x, double y,
    const std::function<void(std::size_t, double, double, double)>& fn) const {
    const double r2max = radius_ * radius_;
    if (brute_) {
        for (std::size_t j = 0; j < xs_.size(); ++j) {
            double dx, dy;
            displacement(x, y, j, dx, dy);
            const double r2 = dx * dx + dy * dy;
            if (r2 <= r2max) fn(j, dx, dy, r2);
        }
        return;
    }
    const int cx = std::clamp(static_cast<int>(std::floor(x / cw_)), 0, ncx_ - 1);
    const int cy = std::clamp(static_cast<int>(std::floor(y / ch_)), 0, ncy_ - 1);
    for (int oy = -1; oy <= 1; ++oy) {
        for (int ox = -1; ox <= 1; ++ox) {
            int bx = cx + ox, by = cy + oy;
            if (periodic_) {
                bx = (bx + ncx_) % ncx_;
                by = (by + ncy_) % ncy_;
            } else if (bx < 0 || bx >= ncx_ || by < 0 || by >= ncy_) {
                continue;
            }
            for (int p = head_[by * ncx_ + bx]; p >= 0; p = next_[p]) {
                double dx, dy;
                displacement(x, y, static_cast<std::size_t>(p), dx, dy);
                const double r2 = dx * dx + dy * dy;
                if (r2 <= r2max) fn(static_cast<std::size_t>(p), dx, dy, r2);
            }
        }
    }
}

void CellList::for_neighbors(
    std::size_t i,
    const std::function<void(std::size_t, double, double, double)>& fn) const {
    for_neighbors_of_point(xs_[i], ys_[i],
                           [&](std::size_t j, double dx, double dy, double r2) {
                               if (j != i) fn(j, dx, dy, r2);
                           });
}

std::vector<std::pair<std::size_t, std::size_t>> CellList::close_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        for_neighbors(i, [&](std::size_t j, double, double, double) {
            if (j > i) pairs.emplace_back(i, j);
        });
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace levyswarm
