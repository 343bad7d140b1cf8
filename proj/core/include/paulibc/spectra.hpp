#pragma once

#include "paulibc/types.hpp"

#include <functional>
#include <optional>

namespace pauli {

/// Parabolic spectral enclosure: the spectrum lies in
///   { z : Re z >= -c_const, |Im z| <= slope * sqrt(Re z + c_const) + offset }.
struct EnclosureRegion {
  double c_const;  // |b| + 4|A|^2 + |A|/(2a), with |A| = |A+| + |A-|
  double slope;    // sqrt(8) |A|
  double offset;   // |A|/(2a)

  bool contains(Complex z) const;
  double dist_to_boundary(Complex z) const;
};

EnclosureRegion enclosure(const ProblemSpec& spec);

/// 1/dist(z, boundary of the enclosure) for z outside; nullopt when z is
/// inside (no bound available there).
std::optional<double> resolvent_bound(Complex z, const ProblemSpec& spec);

using AnalyticFn = std::function<Complex(Complex)>;

/// Zeros-inside count (with multiplicity) of an entire function on a
/// rectangle, by tracking the continuous argument along the adaptively
/// refined boundary polyline. Throws NumericalError when the contour
/// cannot be resolved (e.g. a zero on or near the boundary).
int winding_number(const SearchRegion& region, const AnalyticFn& f);
int winding_number(const SearchRegion& region, const ProblemSpec& spec);

/// A located zero of a generic analytic function.
struct Zero {
  Complex z;
  int multiplicity;     // winding order on a small circle
  double residual;      // |f(z)| relative to a caller-meaningful scale
  bool newton_ok;       // false when the bisection fallback was used
};

/// Locate all zeros of f in the region by adaptive quadrisection plus
/// Newton polish (multiplicity-aware). df may be empty; a central
/// finite-difference derivative is used then.
std::vector<Zero> find_zeros(const SearchRegion& region, const AnalyticFn& f,
                             const AnalyticFn& df, double tol);

struct Eigenvalue {
  Complex lambda;
  int algebraic_mult;   // winding order of the characteristic function
  int geometric_mult;   // nullity of the 4x4 boundary matrix (1 or 2)
  double residual;      // |F(lambda)| / scale
};

/// All eigenvalues in region (intersected with the enclosure first),
/// sorted by (Re, Im); multiplicity-weighted count matches the winding
/// number of the searched region.
std::vector<Eigenvalue> find_eigenvalues(const ProblemSpec& spec,
                                         const SearchRegion& region, double tol);

// ---- parameter sweeps -------------------------------------------------

using BoundaryFamily = std::function<BoundaryPair(double)>;

enum class SweepEventKind { Collision, Complexification, Realization, Ambiguous };

const char* to_string(SweepEventKind k);

struct SweepEvent {
  double alpha_lo, alpha_hi;  // grid interval bracketing the event
  SweepEventKind kind;
  Complex location;
};

struct SweepBranch {
  int id;
  // one entry per grid alpha; nullopt marks a gap (branch absent there)
  std::vector<std::optional<Complex>> values;
};

struct SweepResult {
  std::vector<double> alphas;
  std::vector<SweepBranch> branches;
  std::vector<SweepEvent> events;
};

SweepResult sweep(const BoundaryFamily& family, const ProblemSpec& spec_template,
                  const std::vector<double>& alphas, const SearchRegion& window,
                  double tol);

}  // namespace pauli
