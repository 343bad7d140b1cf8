#include "paulibc/spectra.hpp"

#include "paulibc/secular.hpp"
#include "paulibc/symmetry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pauli {

namespace {

double operator_norm(const Mat2& m) {
  return m.jacobiSvd().singularValues()(0);
}

// point-to-segment distance, segment (x, y0)-(x, y1)
double dist_segment_vertical(Complex z, double x, double y0, double y1) {
  const double y = std::clamp(z.imag(), y0, y1);
  return std::hypot(z.real() - x, z.imag() - y);
}

}  // namespace

bool EnclosureRegion::contains(Complex z) const {
  if (z.real() < -c_const) return false;
  return std::abs(z.imag()) <= slope * std::sqrt(z.real() + c_const) + offset;
}

double EnclosureRegion::dist_to_boundary(Complex z) const {
  const double x0 = z.real();
  const double y0 = std::abs(z.imag());  // the region is symmetric about the real axis

  if (slope == 0.0 && offset == 0.0) {
    // degenerate enclosure: the ray [-c_const, infinity) on the real axis
    if (x0 >= -c_const) return y0;
    return std::hypot(x0 + c_const, y0);
  }

  // vertical segment at the vertex, |y| <= offset
  double best = dist_segment_vertical(z, -c_const, -offset, offset);

  // upper parabola branch (x, y) = (-c_const + t, slope sqrt(t) + offset)
  auto d2 = [&](double t) {
    const double dx = x0 - (-c_const + t);
    const double dy = y0 - (slope * std::sqrt(t) + offset);
    return dx * dx + dy * dy;
  };
  const double t_max = std::max({1.0, x0 + c_const + slope * (y0 + offset), 4.0 * (y0 + offset)});
  const int n_coarse = 512;
  double t_best = 0.0, v_best = d2(0.0);
  for (int i = 1; i <= n_coarse; ++i) {
    const double t = t_max * double(i) / n_coarse;
    const double v = d2(t);
    if (v < v_best) { v_best = v; t_best = t; }
  }
  double lo = std::max(0.0, t_best - t_max / n_coarse);
  double hi = std::min(t_max, t_best + t_max / n_coarse);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (d2(m1) < d2(m2)) hi = m2; else lo = m1;
  }
  best = std::min(best, std::sqrt(d2(0.5 * (lo + hi))));
  return best;
}

EnclosureRegion enclosure(const ProblemSpec& spec) {
  validate(spec);
  const double norm_a = operator_norm(spec.boundary.a_plus) +
                        operator_norm(spec.boundary.a_minus);
  EnclosureRegion r;
  r.offset = norm_a / (2.0 * spec.half_width);
  r.c_const = std::abs(spec.field) + 4.0 * norm_a * norm_a + r.offset;
  r.slope = std::sqrt(8.0) * norm_a;
  return r;
}

std::optional<double> resolvent_bound(Complex z, const ProblemSpec& spec) {
  const EnclosureRegion xi = enclosure(spec);
  if (xi.contains(z)) return std::nullopt;
  return 1.0 / xi.dist_to_boundary(z);
}

// ---- argument-principle machinery ------------------------------------

namespace {

constexpr int kMaxTrackDepth = 30;
constexpr double kPhaseAccept = 1.0;  // rad; principal-branch step considered resolved

struct Tracker {
  const AnalyticFn& f;

  double step(Complex z1, Complex f1, Complex z2, Complex f2, int depth) const {
    if (f1 == Complex(0.0) || f2 == Complex(0.0))
      throw NumericalError("winding_number: zero on contour");
    const Complex zm = 0.5 * (z1 + z2);
    const Complex fm = f(zm);
    if (fm == Complex(0.0)) throw NumericalError("winding_number: zero on contour");
    const double d = std::arg(f2 / f1);
    if (std::abs(d) <= kPhaseAccept) {
      // A small principal-branch step can hide a full turn: a zero just off
      // the segment rotates the phase by almost 2*pi between two samples.
      // Three guards unmask it: the midpoint phase sum equals d exactly
      // modulo 2*pi; |f| dips quadratically towards a nearby zero, showing
      // up either as a midpoint dip or as a steep magnitude ramp. The
      // refinement they trigger stops once the spacing resolves the dip.
      const double two = std::arg(fm / f1) + std::arg(f2 / fm);
      const double m1 = std::abs(f1), m2 = std::abs(f2), mm = std::abs(fm);
      const bool dip = 4.0 * mm * mm < m1 * m2;
      const bool ramp = std::max(m1, m2) > 16.0 * std::min(m1, m2);
      if (std::abs(two - d) < 1.0 && !dip && !ramp) return d;
    }
    if (depth >= kMaxTrackDepth)
      throw NumericalError("winding_number: unresolved contour");
    return step(z1, f1, zm, fm, depth + 1) + step(zm, fm, z2, f2, depth + 1);
  }

  double polyline(const std::vector<Complex>& pts) const {
    std::vector<Complex> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      total += step(pts[i], vals[i], pts[i + 1], vals[i + 1], 0);
    return total;
  }
};

int phase_to_integer(double total) {
  const double w = total / (2.0 * M_PI);
  const double r = std::round(w);
  if (std::abs(w - r) > 0.25)
    throw NumericalError("winding_number: total phase not an integer multiple of 2*pi");
  return int(r);
}

std::vector<Complex> rectangle_points(const SearchRegion& r) {
  auto edge_count = [](double len) {
    return std::clamp(int(std::ceil(64.0 * len)), 8, 16384);
  };
  const Complex c00(r.re_min, r.im_min), c10(r.re_max, r.im_min);
  const Complex c11(r.re_max, r.im_max), c01(r.re_min, r.im_max);
  const Complex corners[5] = {c00, c10, c11, c01, c00};
  std::vector<Complex> pts;
  for (int e = 0; e < 4; ++e) {
    const int n = edge_count(std::abs(corners[e + 1] - corners[e]));
    for (int i = 0; i < n; ++i)
      pts.push_back(corners[e] + (corners[e + 1] - corners[e]) * (double(i) / n));
  }
  pts.push_back(c00);
  return pts;
}

int winding_rect(const SearchRegion& r, const AnalyticFn& f) {
  Tracker t{f};
  return phase_to_integer(t.polyline(rectangle_points(r)));
}

int winding_circle(Complex center, double radius, const AnalyticFn& f) {
  std::vector<Complex> pts;
  const int n = 64;
  for (int i = 0; i <= n; ++i) {
    const double phi = 2.0 * M_PI * double(i) / n;
    pts.push_back(center + radius * Complex(std::cos(phi), std::sin(phi)));
  }
  pts.back() = pts.front();
  Tracker t{f};
  return phase_to_integer(t.polyline(pts));
}

// slightly asymmetric split fractions so internal cut lines avoid
// symmetry axes (real-axis zeros in symmetric windows)
constexpr double kSplitX[] = {0.5123456789, 0.5317711, 0.4712389, 0.5571337, 0.4433221};
constexpr double kSplitY[] = {0.4876543211, 0.4698812, 0.5523198, 0.4411792, 0.5643379};
constexpr int kSplitVariants = 5;

struct CellRoot {
  Complex z;
  int cell_winding;
  double abs_f;
  bool newton_ok;
};

struct ZeroSearch {
  const AnalyticFn& f;
  AnalyticFn df;
  double tol;

  Complex derivative(Complex z) const {
    if (df) return df(z);
    const double h = 1e-7 * (1.0 + std::abs(z));
    return (f(z + h) - f(z - h)) / (2.0 * h);
  }

  bool newton(Complex& z, int mult, const SearchRegion& cell) const {
    const double guard = 3.0 * cell.diameter() + 100.0 * tol;
    const Complex c = cell.center();
    Complex zk = z;
    Complex best = z;
    double best_f = std::abs(f(z));
    for (int it = 0; it < 100; ++it) {
      const Complex fv = f(zk);
      if (std::abs(fv) < best_f) { best_f = std::abs(fv); best = zk; }
      const Complex dv = derivative(zk);
      if (dv == Complex(0.0)) return false;
      const Complex stepv = double(mult) * fv / dv;
      zk -= stepv;
      if (std::abs(zk - c) > guard) return false;
      if (std::abs(stepv) < 1e-3 * tol * (1.0 + std::abs(zk))) {
        z = zk;
        return true;
      }
    }
    // a multiple root makes the iteration jitter inside the noise cluster
    // instead of contracting; the min-|f| iterate is the best estimate
    if (std::abs(zk - c) <= guard) {
      z = best;
      return true;
    }
    return false;
  }

  // |f| minimisation fallback along the cell diagonals, then box shrink
  Complex bisect_fallback(const SearchRegion& cell) const {
    auto probe = [&](Complex p, Complex& best, double& bv) {
      const double v = std::abs(f(p));
      if (v < bv) { bv = v; best = p; }
    };
    Complex best = cell.center();
    double bv = std::abs(f(best));
    const Complex c00(cell.re_min, cell.im_min), c11(cell.re_max, cell.im_max);
    const Complex c10(cell.re_max, cell.im_min), c01(cell.re_min, cell.im_max);
    for (int i = 0; i <= 128; ++i) {
      const double s = double(i) / 128.0;
      probe(c00 + s * (c11 - c00), best, bv);
      probe(c10 + s * (c01 - c10), best, bv);
    }
    double half = 0.5 * cell.diameter() / 128.0 * 2.0;
    while (half > 0.05 * tol) {
      const Complex center = best;
      for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
          probe(center + Complex(dx * half, dy * half), best, bv);
      half *= 0.6;
    }
    return best;
  }

  bool inside(Complex z, const SearchRegion& cell) const {
    const double m = 10.0 * tol * (1.0 + std::abs(z));
    return z.real() >= cell.re_min - m && z.real() <= cell.re_max + m &&
           z.imag() >= cell.im_min - m && z.imag() <= cell.im_max + m;
  }

  void process(const SearchRegion& cell, int w, int depth, std::vector<CellRoot>& out) const {
    if (w == 0) return;
    // A multiple zero splits into a noise-scale cluster of pseudo-roots in
    // floating point; subdividing into the cluster is hopeless (and can
    // collapse a cell to zero width), so stop at the cluster scale and
    // polish the whole cluster as one multiple root.
    const bool tiny = cell.diameter() <
                      std::max(10.0 * tol, 1e-6 * (1.0 + std::abs(cell.center())));
    if (w == 1 || tiny) {
      Complex z = cell.center();
      // a polished point outside the cell belongs to a neighbour; the root
      // this cell's winding promises is still unlocated, so keep splitting
      bool ok = newton(z, w, cell) && inside(z, cell);
      if (!ok && !tiny && depth < 60) {
        subdivide(cell, w, depth, out);
        return;
      }
      if (!ok) z = bisect_fallback(cell);
      out.push_back({z, w, std::abs(f(z)), ok});
      return;
    }
    if (depth >= 60) throw NumericalError("find_zeros: subdivision depth exhausted");
    subdivide(cell, w, depth, out);
  }

  void subdivide(const SearchRegion& cell, int w, int depth, std::vector<CellRoot>& out) const {
    // Phase tracking can silently transfer one turn across a cut when a
    // multiple zero sits within sampling distance of it, so the winding a
    // parent reported for this cell may itself be off. When every split
    // variant agrees on a different total, trust the children; the final
    // comparison of circle multiplicities against the region winding still
    // guards the overall count.
    bool have_alt = false;
    int alt_sum = 0;
    SearchRegion alt_sub[4];
    int alt_ws[4] = {0, 0, 0, 0};
    bool alt_consistent = true;
    for (int v = 0; v < kSplitVariants; ++v) {
      const double xm = cell.re_min + kSplitX[v] * cell.width();
      const double ym = cell.im_min + kSplitY[v] * cell.height();
      // a cut that rounds onto a cell edge would create a zero-area child
      if (!(cell.re_min < xm && xm < cell.re_max && cell.im_min < ym && ym < cell.im_max))
        continue;
      SearchRegion sub[4] = {
          {cell.re_min, xm, cell.im_min, ym},
          {xm, cell.re_max, cell.im_min, ym},
          {cell.re_min, xm, ym, cell.im_max},
          {xm, cell.re_max, ym, cell.im_max},
      };
      int ws[4];
      int sum = 0;
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i) {
        try {
          ws[i] = winding_rect(sub[i], f);
          sum += ws[i];
        } catch (const NumericalError&) {
          ok = false;
        }
      }
      if (ok && sum != w) {
        if (!have_alt) {
          have_alt = true;
          alt_sum = sum;
          for (int i = 0; i < 4; ++i) { alt_sub[i] = sub[i]; alt_ws[i] = ws[i]; }
        } else if (sum != alt_sum) {
          alt_consistent = false;
        }
      }
      if (!ok || sum != w) continue;
      for (int i = 0; i < 4; ++i) process(sub[i], ws[i], depth + 1, out);
      return;
    }
    if (have_alt && alt_consistent) {
      for (int i = 0; i < 4; ++i) process(alt_sub[i], alt_ws[i], depth + 1, out);
      return;
    }
    std::ostringstream os;
    os << "find_zeros: could not place subdivision lines off the zeros in ["
       << cell.re_min << ", " << cell.re_max << "] x [" << cell.im_min << ", "
       << cell.im_max << "], winding " << w;
    throw NumericalError(os.str());
  }
};

}  // namespace

int winding_number(const SearchRegion& region, const AnalyticFn& f) {
  validate(region);
  return winding_rect(region, f);
}

int winding_number(const SearchRegion& region, const ProblemSpec& spec) {
  return winding_number(region, [&spec](Complex z) { return char_function(z, spec).value; });
}

std::vector<Zero> find_zeros(const SearchRegion& region, const AnalyticFn& f,
                             const AnalyticFn& df, double tol) {
  validate(region);
  if (!(tol > 0.0)) throw std::invalid_argument("find_zeros: tol must be positive");

  ZeroSearch search{f, df, tol};
  // a zero sitting exactly on the requested window boundary: nudge the
  // window outward deterministically and retry
  SearchRegion work = region;
  int total = 0;
  for (int attempt = 0;; ++attempt) {
    try {
      total = winding_rect(work, f);
      break;
    } catch (const NumericalError&) {
      if (attempt >= 3) throw;
      const double eps = (1e-7 + 4.7e-7 * attempt) * (1.0 + region.diameter());
      work.re_min -= eps;
      work.re_max += 1.31 * eps;
      work.im_min -= 0.83 * eps;
      work.im_max += 1.11 * eps;
    }
  }
  std::vector<CellRoot> cells;
  search.process(work, total, 0, cells);

  // merge cell roots that polished to the same location
  std::sort(cells.begin(), cells.end(), [](const CellRoot& a, const CellRoot& b) {
    return std::make_pair(a.z.real(), a.z.imag()) < std::make_pair(b.z.real(), b.z.imag());
  });
  std::vector<CellRoot> merged;
  for (const CellRoot& c : cells) {
    // resolution limit: a multiple zero's floating-point pseudo-root cluster
    // (spread ~eps^(1/mult)) must merge back into one root with summed winding
    const double merge_dist = std::max(20.0 * tol, 1e-6) * (1.0 + std::abs(c.z));
    if (!merged.empty() && std::abs(merged.back().z - c.z) < merge_dist) {
      CellRoot& m = merged.back();
      m.cell_winding += c.cell_winding;
      if (c.abs_f < m.abs_f) { m.z = c.z; m.abs_f = c.abs_f; }
      m.newton_ok = m.newton_ok && c.newton_ok;
    } else {
      merged.push_back(c);
    }
  }

  std::vector<Zero> zeros;
  int mult_sum = 0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < merged.size(); ++j)
      if (j != i) sep = std::min(sep, std::abs(merged[i].z - merged[j].z));
    // the circle must enclose the whole pseudo-root cluster of a multiple
    // zero, so prefer a radius well above the merge resolution; cap it by the
    // nearest other root and by the (possibly nudged) window boundary
    const Complex zi = merged[i].z;
    double boundary = std::min(std::min(zi.real() - work.re_min, work.re_max - zi.real()),
                               std::min(zi.imag() - work.im_min, work.im_max - zi.imag()));
    double radius = std::max(100.0 * tol, 1e-5) * (1.0 + std::abs(zi));
    radius = std::min(radius, 0.45 * sep);
    radius = std::min(radius, 0.9 * std::max(boundary, 0.0));
    radius = std::max(radius, 10.0 * tol);

    int mult = merged[i].cell_winding;
    for (int attempt = 0; attempt < 3; ++attempt) {
      try {
        mult = winding_circle(merged[i].z, radius, f);
        break;
      } catch (const NumericalError&) {
        radius *= 0.37;
      }
    }
    mult_sum += mult;
    zeros.push_back({merged[i].z, mult, merged[i].abs_f, merged[i].newton_ok});
  }
  if (mult_sum != total) {
    std::ostringstream os;
    os << "find_zeros: multiplicity bookkeeping disagrees with region winding ("
       << mult_sum << " vs " << total << "); roots:";
    for (const Zero& z : zeros)
      os << " (" << z.z.real() << ", " << z.z.imag() << ") x" << z.multiplicity;
    throw NumericalError(os.str());
  }
  return zeros;
}

std::vector<Eigenvalue> find_eigenvalues(const ProblemSpec& spec,
                                         const SearchRegion& region, double tol) {
  validate(spec);
  validate(region);
  if (!(tol > 0.0)) throw std::invalid_argument("find_eigenvalues: tol must be positive");

  const EnclosureRegion xi = enclosure(spec);
  const double margin = std::max(0.01, 100.0 * tol);
  SearchRegion r = region;
  r.re_min = std::max(r.re_min, -xi.c_const - margin);
  const double im_cap =
      xi.slope * std::sqrt(std::max(0.0, r.re_max + xi.c_const)) + xi.offset + margin;
  r.im_min = std::max(r.im_min, -im_cap);
  r.im_max = std::min(r.im_max, im_cap);
  if (!(r.re_min < r.re_max) || !(r.im_min < r.im_max)) return {};

  auto f = [&spec](Complex z) { return char_function(z, spec).value; };
  auto df = [&spec](Complex z) { return *char_function(z, spec, true).derivative; };
  std::vector<Zero> zeros = find_zeros(r, f, df, tol);

  std::vector<Eigenvalue> eigs;
  eigs.reserve(zeros.size());
  for (const Zero& z : zeros) {
    Eigenvalue e;
    e.lambda = z.z;
    e.algebraic_mult = z.multiplicity;
    const CharValue cv = char_function(z.z, spec);
    e.residual = cv.scale > 0.0 ? std::abs(cv.value) / cv.scale : std::abs(cv.value);

    const Mat4 M = boundary_matrix(z.z, spec);
    Eigen::JacobiSVD<Mat4> svd(M);
    const auto& sv = svd.singularValues();
    const double thresh = std::sqrt(std::numeric_limits<double>::epsilon()) * sv(0);
    int nullity = 0;
    for (int i = 0; i < 4; ++i)
      if (sv(i) < thresh) ++nullity;
    e.geometric_mult = std::clamp(nullity, 1, std::min(2, e.algebraic_mult));
    eigs.push_back(e);
  }
  std::sort(eigs.begin(), eigs.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    return std::make_pair(a.lambda.real(), a.lambda.imag()) <
           std::make_pair(b.lambda.real(), b.lambda.imag());
  });
  return eigs;
}

// ---- sweeps -----------------------------------------------------------

const char* to_string(SweepEventKind k) {
  switch (k) {
    case SweepEventKind::Collision: return "collision";
    case SweepEventKind::Complexification: return "complexification";
    case SweepEventKind::Realization: return "realization";
    case SweepEventKind::Ambiguous: return "ambiguous";
  }
  return "?";
}

SweepResult sweep(const BoundaryFamily& family, const ProblemSpec& spec_template,
                  const std::vector<double>& alphas, const SearchRegion& window,
                  double tol) {
  if (alphas.empty()) throw std::invalid_argument("sweep: empty alpha grid");
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i)
    if (!(alphas[i] < alphas[i + 1]))
      throw std::invalid_argument("sweep: alpha grid must be strictly increasing");

  SweepResult res;
  res.alphas = alphas;
  const std::size_t n_alpha = alphas.size();
  const double real_tol = std::max(1e-9, 10.0 * tol);

  struct Branch {
    int id;
    std::vector<std::optional<Complex>> values;
    bool active = true;
  };
  std::vector<Branch> branches;
  int next_id = 0;
  int prev_nonreal = 0;

  for (std::size_t ia = 0; ia < n_alpha; ++ia) {
    ProblemSpec spec = spec_template;
    spec.boundary = family(alphas[ia]);
    std::vector<Eigenvalue> eigs = find_eigenvalues(spec, window, tol);

    // expand multiplicities so the per-alpha multiset matches a fresh search
    std::vector<Complex> values;
    for (const Eigenvalue& e : eigs)
      for (int m = 0; m < e.algebraic_mult; ++m) values.push_back(e.lambda);

    std::vector<int> assigned(values.size(), -1);
    if (ia == 0) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        branches.push_back({next_id++, {}, true});
        branches.back().values.assign(n_alpha, std::nullopt);
        branches.back().values[ia] = values[j];
      }
    } else {
      // predict each active branch by linear extrapolation
      struct Cand {
        double dist;
        double im_change;
        std::size_t branch_idx;
        std::size_t value_idx;
      };
      std::vector<Cand> cands;
      std::vector<Complex> predictions(branches.size());
      std::vector<bool> branch_taken(branches.size(), false);
      for (std::size_t bi = 0; bi < branches.size(); ++bi) {
        if (!branches[bi].active || !branches[bi].values[ia - 1]) continue;
        const Complex last = *branches[bi].values[ia - 1];
        Complex pred = last;
        if (ia >= 2 && branches[bi].values[ia - 2])
          pred = last + (last - *branches[bi].values[ia - 2]);
        predictions[bi] = pred;
        for (std::size_t j = 0; j < values.size(); ++j)
          cands.push_back({std::abs(values[j] - pred),
                           std::abs(std::abs(values[j].imag()) - std::abs(last.imag())),
                           bi, j});
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.im_change < b.im_change;
      });
      for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        const Cand& c = cands[ci];
        if (branch_taken[c.branch_idx] || assigned[c.value_idx] >= 0) continue;
        // near-tie competing for the same branch or the same value: record,
        // still assign (ties between unrelated pairs are fine -- decoupled
        // channels produce exactly parallel branch motion)
        if (ci + 1 < cands.size()) {
          const Cand& d = cands[ci + 1];
          if (std::abs(d.dist - c.dist) < 1e-12 * (1.0 + c.dist) &&
              (d.branch_idx == c.branch_idx || d.value_idx == c.value_idx) &&
              !branch_taken[d.branch_idx] && assigned[d.value_idx] < 0)
            res.events.push_back({alphas[ia - 1], alphas[ia],
                                  SweepEventKind::Ambiguous, values[c.value_idx]});
        }
        branch_taken[c.branch_idx] = true;
        assigned[c.value_idx] = int(c.branch_idx);
        branches[c.branch_idx].values[ia] = values[c.value_idx];
      }
      for (std::size_t bi = 0; bi < branches.size(); ++bi)
        if (branches[bi].active && !branches[bi].values[ia] && branches[bi].values[ia - 1])
          branches[bi].active = false;  // left the window: gap from here on
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (assigned[j] >= 0) continue;
        branches.push_back({next_id++, {}, true});
        branches.back().values.assign(n_alpha, std::nullopt);
        branches.back().values[ia] = values[j];
      }
    }

    // collision events: coincident values with a flat characteristic function
    for (const Eigenvalue& e : eigs) {
      if (e.algebraic_mult < 2) continue;
      const CharValue cv = char_function(e.lambda, spec, true);
      if (cv.scale > 0.0 && std::abs(*cv.derivative) / cv.scale < 1e-3)
        res.events.push_back({alphas[ia == 0 ? 0 : ia - 1], alphas[ia],
                              SweepEventKind::Collision, e.lambda});
    }
    int nonreal = 0;
    for (const Complex& v : values)
      if (std::abs(v.imag()) > real_tol) ++nonreal;
    if (ia > 0 && nonreal > prev_nonreal) {
      Complex loc(0.0);
      for (const Complex& v : values)
        if (v.imag() > real_tol) loc = v;
      res.events.push_back({alphas[ia - 1], alphas[ia],
                            SweepEventKind::Complexification, loc});
    } else if (ia > 0 && nonreal < prev_nonreal) {
      res.events.push_back({alphas[ia - 1], alphas[ia],
                            SweepEventKind::Realization,
                            values.empty() ? Complex(0.0) : values.front()});
    }
    prev_nonreal = nonreal;
  }

  for (Branch& b : branches) res.branches.push_back({b.id, std::move(b.values)});
  return res;
}

}  // namespace pauli
