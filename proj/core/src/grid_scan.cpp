#include "grid_scan.hpp"

#include <limits>
#include <optional>
#include <random>

namespace convdom::detail {

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr int kGoldenIters = 48;

// mt19937_64 is fully specified by the standard; mapping the raw bits to
// [0, 1) by hand keeps the draw sequence identical across toolchains.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u =
      static_cast<double>(rng() >> 11) * 0x1.0p-53;  // u in [0, 1)
  return lo + (hi - lo) * u;
}

struct Reduction {
  std::optional<Probe> best;
  double min_margin = std::numeric_limits<double>::infinity();
  std::int64_t points = 0;

  void merge(const Probe& p) {
    ++points;
    min_margin = std::min(min_margin, p.defect);
    if (!best || more_violating(p, *best)) best = p;
  }
};

// Golden-section minimisation of the defect along one axis; returns the
// best probe seen. eval1d must merge its probes into the reduction itself.
Probe golden_axis(const std::function<Probe(double)>& eval1d, double lo,
                  double hi) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  Probe pc = eval1d(c);
  Probe pd = eval1d(d);
  Probe best = more_violating(pd, pc) ? pd : pc;
  for (int it = 0; it < kGoldenIters; ++it) {
    if (pc.defect <= pd.defect) {
      b = d;
      d = c;
      pd = pc;
      c = b - kInvPhi * (b - a);
      pc = eval1d(c);
      if (more_violating(pc, best)) best = pc;
    } else {
      a = c;
      c = d;
      pc = pd;
      d = a + kInvPhi * (b - a);
      pd = eval1d(d);
      if (more_violating(pd, best)) best = pd;
    }
    if (!(a < b)) break;
  }
  return best;
}

}  // namespace

SweepResult sweep_xyl(const std::vector<double>& xs,
                      const std::vector<double>& lambdas, double x_lo,
                      double x_hi, double l_lo, double l_hi,
                      const IndexFn3& index_fn, const PointFn3& point_fn,
                      int refine_rounds, std::uint64_t seed) {
  Reduction red;
  const auto probe_at = [&](double x, double y, double l) {
    const LhsRhs v = point_fn(x, y, l);
    const Probe p{v.rhs - v.lhs, x, y, l, v.lhs, v.rhs};
    red.merge(p);
    return p;
  };

  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      for (double l : lambdas) {
        const LhsRhs v = index_fn(i, j, l);
        red.merge(Probe{v.rhs - v.lhs, xs[i], xs[j], l, v.lhs, v.rhs});
      }
    }
  }

  const double hx = (x_hi - x_lo) / static_cast<double>(xs.size() - 1);
  const double hl = lambdas.size() > 1
                        ? (l_hi - l_lo) / static_cast<double>(lambdas.size() - 1)
                        : (l_hi - l_lo);

  const auto descend = [&](Probe cur) {
    for (int round = 0; round < refine_rounds; ++round) {
      for (int axis = 0; axis < 3; ++axis) {
        const double center = axis == 0 ? cur.x : axis == 1 ? cur.y : cur.lambda;
        const double step = axis == 2 ? hl : hx;
        const double lo = std::max(axis == 2 ? l_lo : x_lo, center - step);
        const double hi = std::min(axis == 2 ? l_hi : x_hi, center + step);
        if (!(lo < hi)) continue;
        const auto eval1d = [&](double t) {
          const double x = axis == 0 ? t : cur.x;
          const double y = axis == 1 ? t : cur.y;
          const double l = axis == 2 ? t : cur.lambda;
          return probe_at(x, y, l);
        };
        const Probe found = golden_axis(eval1d, lo, hi);
        if (more_violating(found, cur)) cur = found;
      }
    }
  };

  descend(*red.best);

  std::mt19937_64 rng(seed);
  for (int r = 0; r < kRestarts; ++r) {
    const double x = uniform(rng, x_lo, x_hi);
    const double y = uniform(rng, x_lo, x_hi);
    const double l = uniform(rng, l_lo, l_hi);
    descend(probe_at(x, y, l));
  }

  return SweepResult{*red.best, red.min_margin, red.points};
}

SweepResult sweep_x(const std::vector<double>& xs, double x_lo, double x_hi,
                    const IndexFn1& index_fn, const PointFn1& point_fn,
                    int refine_rounds, std::uint64_t seed) {
  Reduction red;
  const auto probe_at = [&](double x) {
    const LhsRhs v = point_fn(x);
    const Probe p{v.rhs - v.lhs, x, x, 0.0, v.lhs, v.rhs};
    red.merge(p);
    return p;
  };

  for (std::size_t i = 0; i < xs.size(); ++i) {
    const LhsRhs v = index_fn(i);
    red.merge(Probe{v.rhs - v.lhs, xs[i], xs[i], 0.0, v.lhs, v.rhs});
  }

  const double hx = (x_hi - x_lo) / static_cast<double>(xs.size() - 1);

  const auto descend = [&](Probe cur) {
    for (int round = 0; round < refine_rounds; ++round) {
      const double lo = std::max(x_lo, cur.x - hx);
      const double hi = std::min(x_hi, cur.x + hx);
      if (!(lo < hi)) break;
      const Probe found =
          golden_axis([&](double t) { return probe_at(t); }, lo, hi);
      if (more_violating(found, cur))
        cur = found;
      else
        break;
    }
  };

  descend(*red.best);

  std::mt19937_64 rng(seed);
  for (int r = 0; r < kRestarts; ++r)
    descend(probe_at(uniform(rng, x_lo, x_hi)));

  return SweepResult{*red.best, red.min_margin, red.points};
}

}  // namespace convdom::detail
