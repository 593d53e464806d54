#pragma once

#include <vector>

namespace steklov {

// Discrete stand-in for a nonnegative function on a bounded domain: values
// carrying positive measure (FEM elements deliver exactly this).
struct WeightedSample {
    double value = 0.0;
    double measure = 0.0;
};

struct WeightedSampleSet {
    std::vector<WeightedSample> samples;

    double total_measure() const;
    void validate() const;  // all measures > 0
};

// Measure of the super-level set {value > t}.
double superlevel_measure(const WeightedSampleSet& set, double t);

// Piecewise-constant radial function on the ball of matching volume in
// M_kappa. Shell k is (radii[k-1], radii[k]] with radii[-1] := 0; the shell
// measures are the exact sample measures, which is what keeps every L^s norm
// of a rearrangement identical to the input's.
struct RadialFunction {
    enum class Monotonicity { none, nonincreasing, nondecreasing };

    int n = 2;
    double kappa = 0.0;
    std::vector<double> radii;     // increasing, radii.back() = R*
    std::vector<double> values;    // value on shell k
    std::vector<double> measures;  // exact shell measures
    Monotonicity tag = Monotonicity::none;

    double outer_radius() const { return radii.back(); }
    double operator()(double r) const;  // shell lookup; clamps to [0, R*]
};

// Spherical decreasing symmetrization f*: largest values at the center.
RadialFunction rearrange_decreasing(const WeightedSampleSet& set, int n, double kappa);

// Spherical increasing symmetrization f_*: largest values at the boundary.
RadialFunction rearrange_increasing(const WeightedSampleSet& set, int n, double kappa);

// L^s norms (s >= 1) with respect to the sample measure / shell measure.
double ls_norm(const WeightedSampleSet& set, double s);
double ls_norm(const RadialFunction& f, double s);

// Volume-transfer radius: |B(eta(r))|_target = |B(r)|_source, for model
// curvatures source <= target <= 0. Construction precomputes an inverse-volume
// table; evaluations polish the table guess with Newton, so results match the
// direct root-find to full precision.
class EtaTransfer {
  public:
    EtaTransfer(int n, double source_kappa, double target_kappa, double r_max = 16.0);

    int dimension() const { return n_; }
    double source_kappa() const { return source_kappa_; }
    double target_kappa() const { return target_kappa_; }

    double operator()(double r) const;   // eta(r) >= r
    double derivative(double r) const;   // |dB(r)|_source / |dB(eta(r))|_target

  private:
    int n_;
    double source_kappa_;
    double target_kappa_;
    bool identity_;
    double table_max_ = 0.0;
    std::vector<double> table_r_;    // uniform source radii
    std::vector<double> table_eta_;  // exact eta at the nodes
};

double eta_transfer(const EtaTransfer& t, double r);
double eta_derivative(const EtaTransfer& t, double r);

}  // namespace steklov
