#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "d2d/offsn.hpp"
#include "d2d/onsn.hpp"
#include "d2d/phy.hpp"
#include "d2d/trace.hpp"

namespace d2d {

// Per-content service costs in utility units. In rate-fraction mode each
// entry scales the matching per-user rate instead of being absolute:
// c_t scales the device-to-device rate (transmitter's battery and spectrum
// effort), c_m the cellular rate (subscriber payment per download), c_c the
// interference-free cellular rate (control signaling per arranged transfer).
struct CostConfig {
    double c_t = 0.05;
    double c_m = 0.05;
    double c_c = 0.15;
    bool as_rate_fraction = true;
};

// Costs after resolving rate fractions against concrete rates.
struct ResolvedCosts {
    double c_t = 0.0;
    double c_m = 0.0;
    double c_c = 0.0;
};

ResolvedCosts resolve_costs(const CostConfig& costs, double r_d, double r_c, double v_c);

// Whether the old-content term of the utilities uses the expected count
// (sum of m_k / n over the prior) or the realized draw size.
enum class UtilityForm { expected, realized };

// Expected number of already known contents the next user picks: sum of
// m_k / n over the current counts, with n = n_seen + 1.
double expected_old_count(const IbpState& prior);

// User surplus: old_term * (r_d - c_t) + m_n0 * (r_c - c_m).
double utility_user(double old_term, long long m_n0, double r_d, double r_c,
                    const ResolvedCosts& costs);

// Operator surplus: old_term * r_d + m_n0 * r_c - m_n * c_c.
double utility_enb(double old_term, long long m_n0, long long m_n, double r_d, double r_c,
                   const ResolvedCosts& costs);

// Traffic the base station avoided carrying for one user, net of control
// signaling: m_n * v_c - m_n * c_c - enb_served * r_c. The subtracted term
// covers every request the base station actually served; when all old
// contents ride device-to-device links it reduces to the new-content count.
double offloaded_traffic(long long m_n, long long enb_served, double v_c, double r_c, double c_c);

struct EpisodeConfig {
    int n_users = 32;
    double cell_radius_m = 80.0;
    double d2d_max_m = 80.0;
    double alpha = 8.0;
    double w_t = 0.5;
    double content_bits = 1e6;
    double min_separation_m = 1.0;
    std::uint64_t seed = 1;
    UtilityForm utility_form = UtilityForm::expected;
    ChannelConfig channel;
    CostConfig costs;
    SynthesisConfig synth;

    // Order in which users make their selections. Empty means ascending id;
    // otherwise must be a permutation of 0 .. n_users-1.
    std::vector<int> service_order;

    void validate() const;
};

struct PerUserMetrics {
    int user = 0;
    int offsn = -1; // subnetwork index, -1 for white area
    long long n_index = 0;
    long long m_n = 0;
    long long m_n0 = 0;
    long long old_served_d2d = 0;
    long long old_served_enb = 0;
    long long d2d_attempts = 0;
    long long d2d_attempt_failures = 0;
    double v_c = 0.0;
    double r_c = 0.0;
    double r_d = 0.0;
    double u_user = 0.0;
    double u_enb = 0.0;
    double offloaded = 0.0;
};

struct EpisodeAggregates {
    double enb_data_rate_sum = 0.0;
    double d2d_data_rate_sum = 0.0;
    long long enb_served_requests = 0;
    long long d2d_served_requests = 0;
    long long d2d_attempts = 0;
    long long d2d_successes = 0;
    double d2d_success_ratio = 0.0;
    double offloaded_traffic = 0.0;
    long long distinct_contents = 0;
    int n_offsns = 0;
    int n_white_users = 0;
};

struct EpisodeMetrics {
    std::vector<PerUserMetrics> per_user; // ordered by user id, whatever the service order
    EpisodeAggregates agg;
};

// Uniform placement over a disk of the given radius centered on the base
// station, rejecting draws closer than min_separation to the center or to
// an already placed user.
std::map<int, Vec2> place_users(int n_users, double radius_m, double min_separation_m, Rng& rng);

// Runs one full episode:
//   1. place users, synthesize contacts, fit the closeness graph, threshold
//      it into subnetworks and white area;
//   2. each user in service order draws its content selection from its
//      subnetwork's popularity state (white-area users share one cell-wide
//      state and are served directly at the clean cellular rate);
//   3. old contents go to the closest in-range holder, succeeding with
//      probability equal to the edge closeness, falling back to the base
//      station on failure or when no holder is reachable; new contents are
//      always served by the base station, and every served user becomes a
//      holder.
// All transfers of one user are concurrent on a shared subchannel, so its
// device-to-device links see the downlink and each other. Fading is redrawn
// per transmission. A fixed seed reproduces the metrics byte for byte.
EpisodeMetrics run_episode(const EpisodeConfig& cfg);

// CSV emission used by the CLI and the determinism checks.
void write_user_metrics_csv(const EpisodeMetrics& metrics, std::ostream& out);
void write_summary_csv(const EpisodeMetrics& metrics, std::ostream& out);

} // namespace d2d
