#include "hill/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "hill/errors.hpp"
#include "hill/quadrature.hpp"

namespace hill {

namespace {

constexpr int kLinfSamples = 4096;
constexpr double kDominanceCells = 16384.0;  // 2^14 per period
constexpr double kDominanceSlack = 1e-12;

double snap_tolerance(double period) { return 1e-12 * std::max(1.0, period); }

// Calls f(piece, lo, hi) for every intersection of [s, e] with a piece, in
// local coordinates lo, hi ∈ [piece.from, piece.to].
template <class F>
void for_each_segment(const PeriodicCoefficient& a, double s, double e, F&& f) {
  if (!(e > s)) return;
  const double T = a.period();
  const double eps = snap_tolerance(T);
  auto k = static_cast<long long>(std::floor(s / T));
  for (; static_cast<double>(k) * T < e; ++k) {
    const double base = static_cast<double>(k) * T;
    const double lo = std::clamp(std::max(s, base) - base, 0.0, T);
    const double hi = std::clamp(std::min(e, base + T) - base, 0.0, T);
    if (hi - lo <= eps) continue;
    for (const Piece& p : a.pieces()) {
      const double plo = std::max(lo, p.from);
      const double phi = std::min(hi, p.to);
      if (phi > plo) f(p, plo, phi, base);
    }
  }
}

// Splits [lo, hi] at removable points, dropping a symmetric neighbourhood.
std::vector<std::pair<double, double>> clean_intervals(const PeriodicCoefficient& a, double lo, double hi) {
  const double gap = PeriodicCoefficient::kRemovableOffset * std::max(1.0, a.period());
  std::vector<std::pair<double, double>> out;
  double cur = lo;
  for (double r : a.removable_points()) {
    if (r + gap <= lo || r - gap >= hi) continue;
    if (r - gap > cur) out.emplace_back(cur, r - gap);
    cur = std::max(cur, r + gap);
  }
  if (hi > cur) out.emplace_back(cur, hi);
  return out;
}

double checked(double v, double x) {
  if (!std::isfinite(v)) throw NonFinite("coefficient is not finite at x = " + std::to_string(x));
  return v;
}

enum class Extremum { AbsMax, Max, Min };

double segment_extremum(const PeriodicCoefficient& a, const Piece& p, double lo, double hi, Extremum mode) {
  const auto score = [mode](double v) {
    switch (mode) {
      case Extremum::AbsMax:
        return std::abs(v);
      case Extremum::Max:
        return v;
      case Extremum::Min:
        return -v;
    }
    return v;
  };
  if (const auto c = p.expr.constant_value()) return score(*c);

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [s, e] : clean_intervals(a, lo, hi)) {
    const double h = (e - s) / kLinfSamples;
    int best_j = 0;
    double seg_best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= kLinfSamples; ++j) {
      const double x = j == kLinfSamples ? e : s + h * j;
      const double v = score(checked(p.expr.eval(x), x));
      if (v > seg_best) {
        seg_best = v;
        best_j = j;
      }
    }
    const double l = s + h * std::max(best_j - 1, 0);
    const double r = std::min(e, s + h * (best_j + 1));
    const auto neg = [&](double x) { return -score(p.expr.eval(x)); };
    const auto [xm, fm] = boost::math::tools::brent_find_minima(neg, l, r, 52);
    (void)xm;
    seg_best = std::max(seg_best, -fm);
    best = std::max(best, seg_best);
  }
  return best;
}

double extremum(const PeriodicCoefficient& a, double s, double e, Extremum mode) {
  double best = -std::numeric_limits<double>::infinity();
  for_each_segment(a, s, e, [&](const Piece& p, double lo, double hi, double) {
    best = std::max(best, segment_extremum(a, p, lo, hi, mode));
  });
  if (!std::isfinite(best)) throw DomainError("extremum over an empty interval");
  return mode == Extremum::Min ? -best : best;
}

template <class G>
double integrate_transformed(const PeriodicCoefficient& a, double s, double e, const QuadratureOptions& opts, G&& g) {
  if (e < s) return -integrate_transformed(a, e, s, opts, g);
  AdaptiveSimpson rule(opts.abs_tol, opts.budget);
  const double total = e - s;
  double sum = 0.0;
  for_each_segment(a, s, e, [&](const Piece& p, double lo, double hi, double) {
    if (const auto c = p.expr.constant_value()) {
      sum += g(*c) * (hi - lo);
      return;
    }
    for (const auto& [l, r] : clean_intervals(a, lo, hi)) {
      const auto f = [&](double x) { return g(p.expr.eval(x)); };
      sum += rule.integrate(f, l, r, opts.abs_tol * (r - l) / total);
    }
  });
  return sum;
}

}  // namespace

PeriodicCoefficient::PeriodicCoefficient(double period, std::vector<Piece> pieces, std::vector<double> removable)
    : period_(period), pieces_(std::move(pieces)) {
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("period must be positive and finite");
  if (pieces_.empty()) throw DomainError("a coefficient needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& l, const Piece& r) { return l.from < r.from; });
  const double eps = snap_tolerance(period);
  if (std::abs(pieces_.front().from) > eps) throw DomainError("pieces must start at 0");
  if (std::abs(pieces_.back().to - period) > eps) throw DomainError("pieces must end at the period");
  pieces_.front().from = 0.0;
  pieces_.back().to = period;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i > 0) {
      if (std::abs(pieces_[i].from - pieces_[i - 1].to) > eps)
        throw DomainError("pieces must partition [0, T) without gaps or overlaps");
      pieces_[i].from = pieces_[i - 1].to;
    }
    if (!(pieces_[i].to > pieces_[i].from)) throw DomainError("every piece must have positive length");
  }
  for (double r : removable) {
    if (!std::isfinite(r)) throw DomainError("removable points must be finite");
    double rr = r - std::floor(r / period) * period;
    if (rr >= period) rr = 0.0;
    removable_.push_back(rr);
  }
  std::sort(removable_.begin(), removable_.end());
  removable_.erase(std::unique(removable_.begin(), removable_.end()), removable_.end());
}

PeriodicCoefficient PeriodicCoefficient::constant(double value, double period) {
  return PeriodicCoefficient(period, {Piece{0.0, period, Expression::constant(value)}});
}

double PeriodicCoefficient::reduce(double x) const {
  double r = x - std::floor(x / period_) * period_;
  if (r >= period_ || r < 0.0) r = 0.0;
  return r;
}

std::size_t PeriodicCoefficient::piece_at(double reduced_x) const {
  const auto it = std::upper_bound(pieces_.begin(), pieces_.end(), reduced_x,
                                   [](double v, const Piece& p) { return v < p.from; });
  if (it == pieces_.begin()) return 0;
  return static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

bool PeriodicCoefficient::is_removable(double reduced_x) const {
  const double eps = snap_tolerance(period_);
  for (double r : removable_) {
    const double d = std::abs(reduced_x - r);
    if (d <= eps || period_ - d <= eps) return true;
  }
  return false;
}

bool PeriodicCoefficient::is_piecewise_constant() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.expr.constant_value().has_value(); });
}

double PeriodicCoefficient::eval(double x) const {
  if (!std::isfinite(x)) throw DomainError("evaluation point must be finite");
  double xr = reduce(x);
  if (is_removable(xr)) xr = reduce(xr + kRemovableOffset * std::max(1.0, period_));
  return checked(pieces_[piece_at(xr)].expr.eval(xr), x);
}

std::vector<Segment> segments(const PeriodicCoefficient& a, double s, double e) {
  std::vector<Segment> out;
  for_each_segment(a, s, e, [&](const Piece& p, double lo, double hi, double base) { out.push_back({&p, lo, hi, base}); });
  return out;
}

double integral(const PeriodicCoefficient& a, double s, double e, const QuadratureOptions& opts) {
  return integrate_transformed(a, s, e, opts, [](double v) { return v; });
}

double l1_distance(const PeriodicCoefficient& a, double c, double s, double e, const QuadratureOptions& opts) {
  return integrate_transformed(a, s, e, opts, [c](double v) { return std::abs(v - c); });
}

double l1_norm(const PeriodicCoefficient& a, const QuadratureOptions& opts) {
  return l1_distance(a, 0.0, 0.0, a.period(), opts);
}

double linf_norm(const PeriodicCoefficient& a, double s, double e) {
  if (!(e > s)) throw DomainError("linf_norm needs a nonempty interval");
  return extremum(a, s, e, Extremum::AbsMax);
}

double ess_inf(const PeriodicCoefficient& a) { return extremum(a, 0.0, a.period(), Extremum::Min); }

double ess_sup(const PeriodicCoefficient& a) { return extremum(a, 0.0, a.period(), Extremum::Max); }

DominanceReport dominates(const PeriodicCoefficient& a, double c) {
  const double T = a.period();
  double min_gap = std::numeric_limits<double>::infinity();
  double strict_length = 0.0;
  for (const Piece& p : a.pieces()) {
    const double len = p.to - p.from;
    if (const auto v = p.expr.constant_value()) {
      min_gap = std::min(min_gap, *v - c);
      if (*v - c > kDominanceSlack) strict_length += len;
      continue;
    }
    const int cells = std::max(16, static_cast<int>(std::ceil(kDominanceCells * len / T)));
    const double w = len / cells;
    const auto sample = [&](double x, double weight) {
      if (a.is_removable(x)) return;
      const double gap = checked(p.expr.eval(x), x) - c;
      min_gap = std::min(min_gap, gap);
      if (gap > kDominanceSlack) strict_length += weight;
    };
    for (int j = 0; j < cells; ++j) sample(p.from + (j + 0.5) * w, w);
    const double inset = std::min(1e-9, 0.25 * w);
    sample(p.from + inset, 0.0);
    sample(p.to - inset, 0.0);
  }
  DominanceReport r;
  r.min_gap = min_gap;
  r.holds_ae = min_gap >= -kDominanceSlack;
  r.strict_fraction = std::clamp(strict_length / T, 0.0, 1.0);
  r.strict_on_positive_measure = r.holds_ae && r.strict_fraction >= 1.0 / kDominanceCells;
  return r;
}

PeriodicCoefficient shift(const PeriodicCoefficient& a, double r) {
  const double T = a.period();
  const double eps = snap_tolerance(T);
  double rr = a.reduce(r);
  for (const Piece& p : a.pieces()) {
    if (std::abs(rr - p.from) <= eps) rr = p.from;
  }
  if (T - rr <= eps) rr = 0.0;
  if (rr == 0.0) return a;

  const Expression x = Expression::x();
  std::vector<Piece> out;
  for (const Piece& p : a.pieces()) {
    if (p.from >= rr) {
      out.push_back({p.from - rr, p.to - rr, p.expr.substitute_x(x + rr)});
    } else if (p.to <= rr) {
      out.push_back({p.from - rr + T, p.to - rr + T, p.expr.substitute_x(x + (rr - T))});
    } else {
      out.push_back({0.0, p.to - rr, p.expr.substitute_x(x + rr)});
      out.push_back({p.from - rr + T, T, p.expr.substitute_x(x + (rr - T))});
    }
  }
  std::sort(out.begin(), out.end(), [](const Piece& l, const Piece& q) { return l.from < q.from; });
  out.back().to = T;
  for (std::size_t i = 1; i < out.size(); ++i) out[i].from = out[i - 1].to;
  std::vector<double> removable;
  for (double p : a.removable_points()) removable.push_back(p - rr);
  return PeriodicCoefficient(T, std::move(out), std::move(removable));
}

PeriodicCoefficient positive_part(const PeriodicCoefficient& a) {
  std::vector<Piece> out;
  for (const Piece& p : a.pieces()) out.push_back({p.from, p.to, pos_part(p.expr)});
  return PeriodicCoefficient(a.period(), std::move(out), a.removable_points());
}

PeriodicCoefficient affine(const PeriodicCoefficient& a, double s, double c) {
  std::vector<Piece> out;
  for (const Piece& p : a.pieces()) out.push_back({p.from, p.to, s * p.expr + c});
  return PeriodicCoefficient(a.period(), std::move(out), a.removable_points());
}

}  // namespace hill
