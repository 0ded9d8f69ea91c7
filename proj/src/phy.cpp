#include "d2d/phy.hpp"

#include <cmath>
#include <stdexcept>

namespace d2d {

namespace {

double checked_rate(double signal_mw, double interference_mw, double noise_mw) {
    if (!(signal_mw >= 0.0))
        throw std::invalid_argument("rate: signal must be nonnegative");
    if (!(interference_mw >= 0.0))
        throw std::invalid_argument("rate: interference must be nonnegative");
    if (!(noise_mw > 0.0))
        throw std::invalid_argument("rate: noise must be positive");
    // log1p keeps precision for interference-limited links with tiny SINR.
    return std::log1p(signal_mw / (interference_mw + noise_mw)) / M_LN2;
}

} // namespace

void ChannelConfig::validate() const {
    if (!(path_loss_exp >= 2.0) || !(path_loss_exp <= 5.0))
        throw std::invalid_argument("channel: path_loss_exp must be in [2, 5]");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("channel: bandwidth_hz must be positive");
}

double ChannelConfig::noise_floor_mw() const {
    return dbm_to_linear(noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
}

double ChannelConfig::enb_eirp_mw() const { return dbm_to_linear(p_enb_dbm + gain_enb_dbi); }

double ChannelConfig::ue_eirp_mw() const { return dbm_to_linear(p_ue_dbm + gain_ue_dbi); }

double dbm_to_linear(double dbm) { return std::pow(10.0, dbm / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

LinkRealization channel_gain(double distance_m, double eta, Rng& rng) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("channel_gain: distance must be positive");
    if (!(eta >= 2.0) || !(eta <= 5.0))
        throw std::invalid_argument("channel_gain: eta must be in [2, 5]");

    double fading = std::exponential_distribution<double>(1.0)(rng);
    return LinkRealization{distance_m, fading, std::pow(distance_m, -eta) * fading};
}

void InterferenceTopology::add_cellular_d2d(int cellular_receiver, int d2d_pair) {
    cellular_d2d.emplace(cellular_receiver, d2d_pair);
}

void InterferenceTopology::add_d2d_d2d(int pair_a, int pair_b) {
    if (pair_a == pair_b)
        throw std::invalid_argument("interference topology: a pair cannot interfere with itself");
    d2d_d2d.emplace(std::min(pair_a, pair_b), std::max(pair_a, pair_b));
}

bool InterferenceTopology::cellular_hears(int cellular_receiver, int d2d_pair) const {
    return cellular_d2d.count({cellular_receiver, d2d_pair}) != 0;
}

bool InterferenceTopology::d2d_hears(int pair_a, int pair_b) const {
    if (pair_a == pair_b) return false;
    return d2d_d2d.count({std::min(pair_a, pair_b), std::max(pair_a, pair_b)}) != 0;
}

InterferenceTopology InterferenceTopology::full_sharing(int cellular_receiver, int n_d2d_pairs) {
    InterferenceTopology t;
    for (int i = 0; i < n_d2d_pairs; ++i) {
        t.add_cellular_d2d(cellular_receiver, i);
        for (int j = i + 1; j < n_d2d_pairs; ++j) t.add_d2d_d2d(i, j);
    }
    return t;
}

double rate_cellular(double signal_mw, double d2d_interference_mw, double noise_mw) {
    return checked_rate(signal_mw, d2d_interference_mw, noise_mw);
}

double rate_d2d(double signal_mw, double enb_interference_mw, double other_d2d_interference_mw,
                double noise_mw) {
    if (!(enb_interference_mw >= 0.0) || !(other_d2d_interference_mw >= 0.0))
        throw std::invalid_argument("rate: interference must be nonnegative");
    return checked_rate(signal_mw, enb_interference_mw + other_d2d_interference_mw, noise_mw);
}

double rate_clean(double signal_mw, double noise_mw) {
    return checked_rate(signal_mw, 0.0, noise_mw);
}

} // namespace d2d
