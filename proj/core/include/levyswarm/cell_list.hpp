#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace levyswarm {

// Uniform-grid neighbor search over points in [0, lx] x [0, ly].  Cells are at
// least as wide as the query radius, so candidates live in the 3x3 block
// around a point.  With fewer than 4 cells per axis the bookkeeping stops
// paying for itself and every query just scans all points.
class CellList {
  public:
    // xs/ys are the point coordinates (one entry per point); periodic selects
    // wrap-around neighbor blocks and min-image distances.
    CellList(const std::vector<double>& xs, const std::vector<double>& ys, double lx,
             double ly, double radius, bool periodic);

    // Calls fn(j, dx, dy, r2) for every point j != i within radius of point i,
    // where (dx, dy) = displacement from i to j (min-image when periodic) and
    // r2 its squared length.
    void for_neighbors(std::size_t i,
                       const std::function<void(std::size_t, double, double, double)>& fn) const;

    // Same query around an arbitrary position; no self-exclusion.
    void for_neighbors_of_point(double x, double y,
                                const std::function<void(std::size_t, double, double,
                                                         double)>& fn) const;

    // All unordered candidate pairs (i < j) within radius, each reported once,
    // in ascending (i, j) order.
    std::vector<std::pair<std::size_t, std::size_t>> close_pairs() const;

    bool brute_force() const { return brute_; }

  private:
    const std::vector<double>& xs_;
    const std::vector<double>& ys_;
    double lx_, ly_, radius_;
    bool periodic_;
    bool brute_ = false;
    int ncx_ = 0, ncy_ = 0;
    double cw_ = 0.0, ch_ = 0.0;
    std::vector<int> head_;  // first point in each cell, -1 when empty
    std::vector<int> next_;  // next point in the same cell, -1 at the end

    int cell_of(double x, double y) const;
    void displacement(double xi, double yi, std::size_t j, double& dx, double& dy) const;
};

}  // namespace levyswarm
