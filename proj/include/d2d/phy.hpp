#pragma once

#include <set>
#include <utility>

#include "d2d/rng.hpp"

namespace d2d {

// Radio parameters of the cell. Powers and gains are in dBm / dBi / dB as
// named; conversions to linear milliwatts happen at the point of use.
// Spectral efficiencies are bits/s/Hz; bandwidth_hz only matters when a link
// rate in bits/s is needed (transfer-time computations).
struct ChannelConfig {
    double path_loss_exp = 3.0;
    double p_enb_dbm = 46.0;
    double p_ue_dbm = 23.0;
    double gain_enb_dbi = 14.0;
    double gain_ue_dbi = 0.0;
    double noise_density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    double bandwidth_hz = 10e6;

    void validate() const;

    // Thermal noise over the configured bandwidth plus receiver noise
    // figure, in linear mW.
    double noise_floor_mw() const;

    // Transmit power times antenna gain, linear mW.
    double enb_eirp_mw() const;
    double ue_eirp_mw() const;
};

double dbm_to_linear(double dbm);
double db_to_linear(double db);

// One channel draw: deterministic d^-eta path loss times a unit-mean
// exponential fading power (Rayleigh envelope).
struct LinkRealization {
    double distance_m;
    double fading_power;
    double gain;
};

// Requires distance > 0 and eta in [2, 5].
LinkRealization channel_gain(double distance_m, double eta, Rng& rng);

// Which concurrent transmissions interfere. Cellular downlinks are keyed by
// receiver user id, device-to-device transmissions by a dense pair index.
// Missing flags mean no interference.
struct InterferenceTopology {
    std::set<std::pair<int, int>> cellular_d2d; // (cellular receiver, d2d pair index)
    std::set<std::pair<int, int>> d2d_d2d;      // unordered pair indices, stored min first

    void add_cellular_d2d(int cellular_receiver, int d2d_pair);
    void add_d2d_d2d(int pair_a, int pair_b); // pair_a != pair_b

    bool cellular_hears(int cellular_receiver, int d2d_pair) const;
    bool d2d_hears(int pair_a, int pair_b) const;

    // Every d2d pair interferes with the cellular receiver and with every
    // other pair: the single shared subchannel case.
    static InterferenceTopology full_sharing(int cellular_receiver, int n_d2d_pairs);
};

// Spectral efficiencies, all log2(1 + SINR). Interference terms are summed
// received powers in linear mW; noise_mw must be positive.
double rate_cellular(double signal_mw, double d2d_interference_mw, double noise_mw);
double rate_d2d(double signal_mw, double enb_interference_mw, double other_d2d_interference_mw,
                double noise_mw);
double rate_clean(double signal_mw, double noise_mw);

} // namespace d2d
