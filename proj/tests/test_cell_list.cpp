#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "levyswarm/cell_list.hpp"
#include "levyswarm/rng.hpp"

using namespace levyswarm;

namespace {

struct Cloud {
    std::vector<double> xs, ys;
};

Cloud random_cloud(int n, double lx, double ly, std::uint64_t seed) {
    Cloud c;
    RngStream rng(seed);
    for (int i = 0; i < n; ++i) {
        c.xs.push_back(rng.uniform(0.0, lx));
        c.ys.push_back(rng.uniform(0.0, ly));
    }
    return c;
}

double min_image(double d, double l) {
    if (d > 0.5 * l) return d - l;
    if (d < -0.5 * l) return d + l;
    return d;
}

std::set<std::pair<std::size_t, std::size_t>> brute_pairs(const Cloud& c, double lx,
                                                          double ly, double radius,
                                                          bool periodic) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < c.xs.size(); ++i)
        for (std::size_t j = i + 1; j < c.xs.size(); ++j) {
            double dx = c.xs[j] - c.xs[i];
            double dy = c.ys[j] - c.ys[i];
            if (periodic) {
                dx = min_image(dx, lx);
                dy = min_image(dy, ly);
            }
            if (dx * dx + dy * dy <= radius * radius) out.insert({i, j});
        }
    return out;
}

} // namespace

TEST_CASE("close pairs match a brute-force scan") {
    const double lx = 10.0, ly = 8.0, radius = 0.7;
    for (bool periodic : {false, true}) {
        Cloud c = random_cloud(300, lx, ly, periodic ? 11u : 7u);
        CellList cl(c.xs, c.ys, lx, ly, radius, periodic);
        CHECK_FALSE(cl.brute_force());

        auto expected = brute_pairs(c, lx, ly, radius, periodic);
        auto got = cl.close_pairs();
        std::set<std::pair<std::size_t, std::size_t>> got_set(got.begin(), got.end());
        CHECK(got_set == expected);

        // reported in ascending order, each pair once
        CHECK(std::is_sorted(got.begin(), got.end()));
        CHECK(got.size() == got_set.size());
    }
}

TEST_CASE("periodic wrap finds pairs across the seam") {
    std::vector<double> xs{0.05, 9.95};
    std::vector<double> ys{4.0, 4.0};
    CellList wrapped(xs, ys, 10.0, 8.0, 0.5, true);
    CHECK(wrapped.close_pairs().size() == 1);
    CellList walled(xs, ys, 10.0, 8.0, 0.5, false);
    CHECK(walled.close_pairs().empty());
}

TEST_CASE("neighbor displacement uses the minimum image") {
    std::vector<double> xs{0.1, 9.9};
    std::vector<double> ys{0.2, 7.9};
    CellList cl(xs, ys, 10.0, 8.0, 1.0, true);
    int hits = 0;
    cl.for_neighbors(0, [&](std::size_t j, double dx, double dy, double r2) {
        CHECK(j == 1);
        CHECK(dx == doctest::Approx(-0.2).epsilon(1e-12));
        CHECK(dy == doctest::Approx(-0.3).epsilon(1e-12));
        CHECK(r2 == doctest::Approx(0.13).epsilon(1e-12));
        ++hits;
    });
    CHECK(hits == 1);
}

TEST_CASE("query around an arbitrary point includes every point in range") {
    Cloud c = random_cloud(200, 6.0, 6.0, 3);
    const double radius = 0.9;
    CellList cl(c.xs, c.ys, 6.0, 6.0, radius, true);
    const double qx = 2.3, qy = 4.1;
    std::set<std::size_t> got;
    cl.for_neighbors_of_point(qx, qy, [&](std::size_t j, double, double, double r2) {
        CHECK(r2 <= radius * radius + 1e-12);
        got.insert(j);
    });
    std::set<std::size_t> expected;
    for (std::size_t j = 0; j < c.xs.size(); ++j) {
        const double dx = min_image(c.xs[j] - qx, 6.0);
        const double dy = min_image(c.ys[j] - qy, 6.0);
        if (dx * dx + dy * dy <= radius * radius) expected.insert(j);
    }
    CHECK(got == expected);
}

TEST_CASE("small domains fall back to the full scan and still agree") {
    // radius comparable to the box: fewer than 4 cells per axis
    Cloud c = random_cloud(60, 2.0, 2.0, 5);
    const double radius = 0.8;
    for (bool periodic : {false, true}) {
        CellList cl(c.xs, c.ys, 2.0, 2.0, radius, periodic);
        CHECK(cl.brute_force());
        auto got = cl.close_pairs();
        auto expected = brute_pairs(c, 2.0, 2.0, radius, periodic);
        CHECK(std::set<std::pair<std::size_t, std::size_t>>(got.begin(), got.end()) ==
              expected);
    }
}

TEST_CASE("self is excluded from neighbor queries") {
    std::vector<double> xs{1.0, 1.1};
    std::vector<double> ys{1.0, 1.0};
    CellList cl(xs, ys, 10.0, 10.0, 0.5, false);
    cl.for_neighbors(0, [&](std::size_t j, double, double, double) { CHECK(j != 0); });
    cl.for_neighbors(1, [&](std::size_t j, double, double, double) { CHECK(j != 1); });
}
