#include "levyswarm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace levyswarm {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1,1].  Even nodes are the
// embedded Gauss-7 points.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Segment {
    double a, b;
    double value;   // K15 estimate
    double error;   // |K15 - G7| based estimate
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double kronrod = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fsum;
        if (i == 7) {
            fsum = f(c);
        } else {
            fsum = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
        }
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum; // odd indices = Gauss-7 nodes
    }
    kronrod *= h;
    gauss *= h;
    const double diff = std::abs(kronrod - gauss);
    // QUADPACK-style sharpened estimate; falls back to diff for tiny values.
    double err = diff;
    if (diff > 0.0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {a, b, kronrod, err};
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    auto worse = [](const Segment& l, const Segment& r) { return l.error < r.error; };
    std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> queue(worse);

    Segment first = evaluate(f, a, b);
    out.evaluations = 15;
    double total = first.value;
    double total_err = first.error;
    queue.push(first);

    while (out.evaluations + 30 <= opt.max_evaluations) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (total_err <= target) break;
        Segment seg = queue.top();
        queue.pop();
        const double mid = 0.5 * (seg.a + seg.b);
        if (mid <= seg.a || mid >= seg.b) {
            // interval at floating point resolution; keep its contribution
            queue.push(seg); // put back so totals stay consistent
            break;
        }
        Segment left = evaluate(f, seg.a, mid);
        Segment right = evaluate(f, mid, seg.b);
        out.evaluations += 30;
        total += left.value + right.value - seg.value;
        total_err += left.error + right.error - seg.error;
        queue.push(left);
        queue.push(right);
    }

    out.value = total;
    out.error = total_err;
    out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return out;
}

} // namespace levyswarm
