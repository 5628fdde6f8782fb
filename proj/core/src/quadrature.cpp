#include "fnspace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fnspace {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1].
// Column layout: abscissa, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

double gk15(const std::function<double(double)>& f, double a, double b,
            double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double y0 = f(mid);
  double g7 = kG7K15[0][1] * y0;
  double k15 = kG7K15[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kG7K15[i][0];
    const double yi = f(mid + dx) + f(mid - dx);
    g7 += kG7K15[i][1] * yi;
    k15 += kG7K15[i][2] * yi;
  }
  g7 *= half;
  k15 *= half;

  // scale-invariant Kronrod error heuristic: amplify the relative G7/K15
  // discrepancy, never the absolute one, so huge-magnitude integrands do not
  // drown in their own rounding noise
  const double diff = std::fabs(g7 - k15);
  const double scale = std::fabs(k15) + 1e-300;
  const double rel = diff / scale;
  err = scale * std::min(200.0 * rel, std::pow(200.0 * rel, 1.5));
  return k15;
}

}  // namespace

Integral integrate(const std::function<double(double)>& f, double a, double b,
                   double rel_tol, double abs_floor, int max_intervals) {
  Integral out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }

  struct Interval {
    double a, b, value, error;
  };

  double err0 = 0.0;
  const double v0 = gk15(f, a, b, err0);
  std::vector<Interval> heap{{a, b, v0, err0}};
  double total = v0;
  double total_err = err0;

  int splits = 0;
  while (total_err > std::max(rel_tol * std::fabs(total), abs_floor) &&
         splits < max_intervals) {
    // split the interval with the largest error estimate
    size_t worst = 0;
    for (size_t i = 1; i < heap.size(); ++i)
      if (heap[i].error > heap[worst].error) worst = i;
    Interval cur = heap[worst];
    if (cur.b - cur.a < 1e-15 * (std::fabs(cur.a) + 1.0)) break;

    const double mid = 0.5 * (cur.a + cur.b);
    double e1 = 0.0, e2 = 0.0;
    const double v1 = gk15(f, cur.a, mid, e1);
    const double v2 = gk15(f, mid, cur.b, e2);
    total += v1 + v2 - cur.value;
    total_err += e1 + e2 - cur.error;
    heap[worst] = {cur.a, mid, v1, e1};
    heap.push_back({mid, cur.b, v2, e2});
    ++splits;
  }

  out.value = total;
  out.abs_error = std::max(total_err, 0.0);
  out.converged =
      total_err <= std::max(rel_tol * std::fabs(total) * 4.0, abs_floor * 4.0) ||
      splits < max_intervals;
  return out;
}

namespace {

// Shared window-extension loop. dir = +1 walks right from u0, dir = -1 walks
// left. Windows double in span; divergence is declared when increments stop
// decaying.
Integral extend_windows(const std::function<double(double)>& g, double u0,
                        int dir, double rel_tol, int max_windows) {
  Integral out;
  double total = 0.0;
  // Starting far out on a power tail, fixed-width windows would see growing
  // increments for many doublings; scale the first window with the start.
  double width = std::max(4.0, 0.5 * std::fabs(u0));
  double lo = u0;
  double prev_inc = 0.0;
  int non_decaying = 0;

  for (int w = 0; w < max_windows; ++w) {
    const double hi = lo + dir * width;
    const double a = dir > 0 ? lo : hi;
    const double b = dir > 0 ? hi : lo;
    // window budget: splitting beyond ~700 intervals only ever chases the
    // interpolation noise of table-backed integrands
    const Integral piece =
        integrate(g, a, b, std::max(1e-12, rel_tol * 1e-2), 1e-300, 700);
    const double inc = piece.value;
    total += inc;
    out.abs_error += piece.abs_error;

    // positive integrands overflowing double range are divergent
    if (!std::isfinite(inc) || !std::isfinite(total)) {
      out.value = total;
      out.diverged = true;
      return out;
    }

    const double scale = std::max(std::fabs(total), 1e-300);
    if (w > 0 && std::fabs(inc) >= std::fabs(prev_inc) &&
        std::fabs(inc) > 1e-14 * scale) {
      ++non_decaying;
    } else {
      non_decaying = 0;
    }
    if (non_decaying >= 6) {
      out.value = total;
      out.diverged = true;
      return out;
    }
    if (std::fabs(inc) < rel_tol * scale && w >= 1) {
      // one confirmation window before trusting convergence
      const double hi2 = hi + dir * width * 2.0;
      const double a2 = dir > 0 ? hi : hi2;
      const double b2 = dir > 0 ? hi2 : hi;
      const Integral confirm = integrate(g, a2, b2, 1e-12);
      total += confirm.value;
      if (std::fabs(confirm.value) < rel_tol * std::max(std::fabs(total), 1e-300)) {
        out.value = total;
        out.converged = true;
        return out;
      }
      lo = hi2;
      width *= 2.0;
      prev_inc = confirm.value;
      continue;
    }
    prev_inc = inc;
    lo = hi;
    width *= 2.0;
  }

  out.value = total;
  // Ran out of windows: neither clean convergence nor growth. Report the
  // partial value; callers treat converged=false, diverged=false as
  // "unknown-numeric".
  out.converged = false;
  return out;
}

}  // namespace

Integral integrate_tail(const std::function<double(double)>& g, double u0,
                        double rel_tol, int max_windows) {
  return extend_windows(g, u0, +1, rel_tol, max_windows);
}

Integral integrate_head(const std::function<double(double)>& g, double u1,
                        double rel_tol, int max_windows) {
  return extend_windows(g, u1, -1, rel_tol, max_windows);
}

}  // namespace fnspace
