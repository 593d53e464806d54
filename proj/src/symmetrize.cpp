#include "steklov/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "steklov/spaceform.hpp"

namespace steklov {

double WeightedSampleSet::total_measure() const {
    double total = 0.0;
    for (const auto& s : samples) total += s.measure;
    return total;
}

void WeightedSampleSet::validate() const {
    for (const auto& s : samples)
        if (!(s.measure > 0.0))
            throw std::invalid_argument("WeightedSampleSet: all measures must be positive");
}

double superlevel_measure(const WeightedSampleSet& set, double t) {
    double total = 0.0;
    for (const auto& s : set.samples)
        if (s.value > t) total += s.measure;
    return total;
}

double RadialFunction::operator()(double r) const {
    if (values.empty()) throw std::logic_error("RadialFunction: empty");
    if (r <= radii.front()) return values.front();
    const auto it = std::lower_bound(radii.begin(), radii.end(), r);
    if (it == radii.end()) return values.back();
    return values[static_cast<size_t>(it - radii.begin())];
}

namespace {

RadialFunction rearrange(const WeightedSampleSet& set, int n, double kappa, bool decreasing) {
    set.validate();
    if (set.samples.empty())
        throw std::domain_error("rearrange: sample set must be nonempty");

    std::vector<size_t> order(set.samples.size());
    std::iota(order.begin(), order.end(), 0);
    // Stable: tied values land in adjacent shells and the function is unchanged.
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return decreasing ? set.samples[a].value > set.samples[b].value
                          : set.samples[a].value < set.samples[b].value;
    });

    RadialFunction out;
    out.n = n;
    out.kappa = kappa;
    out.tag = decreasing ? RadialFunction::Monotonicity::nonincreasing
                         : RadialFunction::Monotonicity::nondecreasing;
    out.radii.reserve(order.size());
    out.values.reserve(order.size());
    out.measures.reserve(order.size());

    double cumulative = 0.0;
    for (size_t k : order) {
        cumulative += set.samples[k].measure;
        out.radii.push_back(radius_from_volume(n, kappa, cumulative));
        out.values.push_back(set.samples[k].value);
        out.measures.push_back(set.samples[k].measure);
    }
    return out;
}

}  // namespace

RadialFunction rearrange_decreasing(const WeightedSampleSet& set, int n, double kappa) {
    return rearrange(set, n, kappa, true);
}

RadialFunction rearrange_increasing(const WeightedSampleSet& set, int n, double kappa) {
    return rearrange(set, n, kappa, false);
}

double ls_norm(const WeightedSampleSet& set, double s) {
    if (s < 1.0) throw std::invalid_argument("ls_norm: s must be >= 1");
    double sum = 0.0;
    for (const auto& w : set.samples) sum += w.measure * std::pow(std::abs(w.value), s);
    return std::pow(sum, 1.0 / s);
}

double ls_norm(const RadialFunction& f, double s) {
    if (s < 1.0) throw std::invalid_argument("ls_norm: s must be >= 1");
    double sum = 0.0;
    for (size_t k = 0; k < f.values.size(); ++k)
        sum += f.measures[k] * std::pow(std::abs(f.values[k]), s);
    return std::pow(sum, 1.0 / s);
}

EtaTransfer::EtaTransfer(int n, double source_kappa, double target_kappa, double r_max)
    : n_(n), source_kappa_(source_kappa), target_kappa_(target_kappa) {
    if (n < 2) throw std::invalid_argument("EtaTransfer: n must be >= 2");
    if (!(source_kappa <= target_kappa && target_kappa <= 0.0))
        throw std::invalid_argument("EtaTransfer: need source <= target <= 0");
    identity_ = (source_kappa == target_kappa);
    if (identity_) return;

    constexpr int kTableSize = 512;
    table_max_ = r_max;
    table_r_.resize(kTableSize + 1);
    table_eta_.resize(kTableSize + 1);
    for (int i = 0; i <= kTableSize; ++i) {
        const double r = r_max * i / kTableSize;
        table_r_[i] = r;
        table_eta_[i] =
            (i == 0) ? 0.0 : radius_from_volume(n_, target_kappa_, ball_volume(n_, source_kappa_, r));
    }
}

double EtaTransfer::operator()(double r) const {
    if (!(r > 0.0)) throw std::invalid_argument("EtaTransfer: r must be positive");
    if (identity_) return r;
    const double V = ball_volume(n_, source_kappa_, r);
    if (r >= table_max_) return radius_from_volume(n_, target_kappa_, V);

    // Table guess, then Newton on m_target(eta) = V down to the same
    // tolerance radius_from_volume guarantees.
    const double step = table_max_ / (table_r_.size() - 1);
    const size_t i = std::min(table_r_.size() - 2, static_cast<size_t>(r / step));
    const double t = (r - table_r_[i]) / step;
    double eta = (1.0 - t) * table_eta_[i] + t * table_eta_[i + 1];
    eta = std::max(eta, r);
    for (int iter = 0; iter < 30; ++iter) {
        const double f = ball_volume(n_, target_kappa_, eta) - V;
        if (std::abs(f) <= 1e-12 * V) return eta;
        eta -= f / sphere_area(n_, target_kappa_, eta);
    }
    return radius_from_volume(n_, target_kappa_, V);
}

double EtaTransfer::derivative(double r) const {
    if (!(r > 0.0)) throw std::invalid_argument("EtaTransfer: r must be positive");
    if (identity_) return 1.0;
    return sphere_area(n_, source_kappa_, r) / sphere_area(n_, target_kappa_, (*this)(r));
}

double eta_transfer(const EtaTransfer& t, double r) { return t(r); }
double eta_derivative(const EtaTransfer& t, double r) { return t.derivative(r); }

}  // namespace steklov
