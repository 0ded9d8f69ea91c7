#include "d2d/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "d2d/textio.hpp"

namespace d2d {

namespace {

// Sub-stream tags of the master seed.
enum StreamTag : std::uint64_t {
    kPlacement = 1,
    kTrace = 2,
    kGraphSnapshot = 3,
    kDemand = 4,
    kService = 5,
};

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

} // namespace

ResolvedCosts resolve_costs(const CostConfig& costs, double r_d, double r_c, double v_c) {
    if (costs.c_t < 0.0 || costs.c_m < 0.0 || costs.c_c < 0.0)
        throw std::invalid_argument("costs must be nonnegative");
    if (!costs.as_rate_fraction) return ResolvedCosts{costs.c_t, costs.c_m, costs.c_c};
    return ResolvedCosts{costs.c_t * r_d, costs.c_m * r_c, costs.c_c * v_c};
}

double expected_old_count(const IbpState& prior) {
    double n = static_cast<double>(prior.n_seen + 1);
    double sum = 0.0;
    for (const auto& [content, m_k] : prior.counts) sum += static_cast<double>(m_k);
    return sum / n;
}

double utility_user(double old_term, long long m_n0, double r_d, double r_c,
                    const ResolvedCosts& costs) {
    if (old_term < 0.0 || m_n0 < 0)
        throw std::invalid_argument("utility_user: negative counts");
    return old_term * (r_d - costs.c_t) + static_cast<double>(m_n0) * (r_c - costs.c_m);
}

double utility_enb(double old_term, long long m_n0, long long m_n, double r_d, double r_c,
                   const ResolvedCosts& costs) {
    if (old_term < 0.0 || m_n0 < 0 || m_n < 0)
        throw std::invalid_argument("utility_enb: negative counts");
    return old_term * r_d + static_cast<double>(m_n0) * r_c - static_cast<double>(m_n) * costs.c_c;
}

double offloaded_traffic(long long m_n, long long enb_served, double v_c, double r_c, double c_c) {
    if (m_n < 0 || enb_served < 0)
        throw std::invalid_argument("offloaded_traffic: negative counts");
    return static_cast<double>(m_n) * (v_c - c_c) - static_cast<double>(enb_served) * r_c;
}

void EpisodeConfig::validate() const {
    if (n_users < 2) throw std::invalid_argument("config: n_users must be at least 2");
    if (!(cell_radius_m > 0.0)) throw std::invalid_argument("config: cell_radius_m must be positive");
    if (!(d2d_max_m >= 0.0)) throw std::invalid_argument("config: d2d_max_m must be nonnegative");
    if (!(alpha > 0.0)) throw std::invalid_argument("config: alpha must be positive");
    if (!(w_t >= 0.0)) throw std::invalid_argument("config: w_t must be nonnegative");
    if (!(content_bits > 0.0)) throw std::invalid_argument("config: content_bits must be positive");
    if (!(min_separation_m >= 0.0) || min_separation_m >= cell_radius_m)
        throw std::invalid_argument("config: min_separation_m must be in [0, cell_radius_m)");
    channel.validate();
    if (costs.c_t < 0.0 || costs.c_m < 0.0 || costs.c_c < 0.0)
        throw std::invalid_argument("config: costs must be nonnegative");

    if (!service_order.empty()) {
        if (service_order.size() != static_cast<std::size_t>(n_users))
            throw std::invalid_argument("config: service_order must list every user once");
        std::vector<int> sorted = service_order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n_users; ++i)
            if (sorted[static_cast<std::size_t>(i)] != i)
                throw std::invalid_argument("config: service_order is not a permutation");
    }
}

std::map<int, Vec2> place_users(int n_users, double radius_m, double min_separation_m, Rng& rng) {
    if (n_users < 1) throw std::invalid_argument("place_users: need at least one user");
    if (!(radius_m > 0.0)) throw std::invalid_argument("place_users: radius must be positive");

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::map<int, Vec2> out;
    constexpr int kMaxAttempts = 1'000'000;

    int attempts = 0;
    for (int u = 0; u < n_users; ++u) {
        for (;;) {
            if (++attempts > kMaxAttempts)
                throw std::runtime_error("place_users: cannot satisfy separation constraint");
            double r = radius_m * std::sqrt(unit(rng));
            double phi = 2.0 * M_PI * unit(rng);
            Vec2 p{r * std::cos(phi), r * std::sin(phi)};
            if (std::hypot(p.x, p.y) < min_separation_m) continue;
            bool clear = true;
            for (const auto& [id, q] : out) {
                if (distance(p, q) < min_separation_m) {
                    clear = false;
                    break;
                }
            }
            if (clear) {
                out.emplace(u, p);
                break;
            }
        }
    }
    return out;
}

EpisodeMetrics run_episode(const EpisodeConfig& cfg) {
    cfg.validate();

    Rng placement_rng = make_rng(cfg.seed, kPlacement);
    Rng trace_rng = make_rng(cfg.seed, kTrace);
    Rng snapshot_rng = make_rng(cfg.seed, kGraphSnapshot);
    Rng demand_rng = make_rng(cfg.seed, kDemand);
    Rng service_rng = make_rng(cfg.seed, kService);

    const double eta = cfg.channel.path_loss_exp;
    const double noise_mw = cfg.channel.noise_floor_mw();
    const double enb_eirp = cfg.channel.enb_eirp_mw();
    const double ue_eirp = cfg.channel.ue_eirp_mw();
    const Vec2 enb_pos{0.0, 0.0};

    auto positions = place_users(cfg.n_users, cfg.cell_radius_m, cfg.min_separation_m, placement_rng);
    auto records = synthesize_trace(positions, trace_rng, cfg.synth);
    auto stats = contact_stats(records);

    // Edge weight snapshot: the chance that a contact outlasts the transfer
    // of one content over an interference-free direct link.
    XMinModel x_min = [&](const UserPair& p) {
        double d = distance(positions.at(p.a), positions.at(p.b));
        auto link = channel_gain(d, eta, snapshot_rng);
        double rate_bps = rate_clean(ue_eirp * link.gain, noise_mw) * cfg.channel.bandwidth_hz;
        if (!(rate_bps > 0.0)) rate_bps = std::numeric_limits<double>::min();
        return min_contact_time(cfg.content_bits, rate_bps);
    };

    auto graph = build_graph(stats, positions, x_min);
    auto part = partition(graph, cfg.w_t);

    std::map<int, int> offsn_of; // -1 = white area
    for (int u : graph.users) offsn_of[u] = -1;
    for (std::size_t s = 0; s < part.offsns.size(); ++s)
        for (int u : part.offsns[s]) offsn_of[u] = static_cast<int>(s);

    std::vector<IbpState> states(part.offsns.size());
    for (auto& st : states) st.alpha = cfg.alpha;
    IbpState white_state;
    white_state.alpha = cfg.alpha;

    // holders[s][k]: users of subnetwork s that already have content k.
    std::vector<std::map<ContentId, std::set<int>>> holders(part.offsns.size());

    std::vector<int> order = cfg.service_order;
    if (order.empty()) {
        order.resize(static_cast<std::size_t>(cfg.n_users));
        std::iota(order.begin(), order.end(), 0);
    }

    EpisodeMetrics metrics;
    metrics.agg.n_offsns = static_cast<int>(part.offsns.size());
    metrics.agg.n_white_users = static_cast<int>(part.white_area.size());

    auto draw_enb_signal = [&](int user) {
        double d = distance(positions.at(user), enb_pos);
        return enb_eirp * channel_gain(d, eta, service_rng).gain;
    };
    auto draw_d2d_power = [&](int tx, int rx) {
        double d = distance(positions.at(tx), positions.at(rx));
        return ue_eirp * channel_gain(d, eta, service_rng).gain;
    };

    for (int u : order) {
        PerUserMetrics row;
        row.user = u;
        row.offsn = offsn_of.at(u);

        if (row.offsn < 0) {
            // White area: every request is a direct clean-rate download from
            // the base station; nothing is offloaded and no control
            // signaling is spent.
            IbpState& state = white_state;
            row.n_index = state.n_seen + 1;
            Selection sel = ibp_select(state, demand_rng);
            row.m_n = sel.total();
            row.m_n0 = sel.n_new;
            row.old_served_enb = static_cast<long long>(sel.old_contents.size());

            std::vector<double> rates;
            for (long long i = 0; i < row.m_n; ++i)
                rates.push_back(rate_clean(draw_enb_signal(u), noise_mw));
            double v = rates.empty() ? rate_clean(draw_enb_signal(u), noise_mw) : mean_of(rates);
            row.v_c = v;
            row.r_c = v;
            row.r_d = 0.0;

            ResolvedCosts costs = resolve_costs(cfg.costs, 0.0, v, v);
            row.u_user = static_cast<double>(row.m_n) * (v - costs.c_m);
            row.u_enb = static_cast<double>(row.m_n) * v;
            row.offloaded = offloaded_traffic(row.m_n, row.m_n, v, v, 0.0);

            metrics.agg.enb_data_rate_sum += std::accumulate(rates.begin(), rates.end(), 0.0);
            metrics.agg.enb_served_requests += row.m_n;
            metrics.agg.offloaded_traffic += row.offloaded;
            state = update_prior(state, sel);
            metrics.per_user.push_back(row);
            continue;
        }

        auto s = static_cast<std::size_t>(row.offsn);
        IbpState& state = states[s];
        auto& offsn_holders = holders[s];
        row.n_index = state.n_seen + 1;

        double expected_old = expected_old_count(state);
        Selection sel = ibp_select(state, demand_rng);
        row.m_n = sel.total();
        row.m_n0 = sel.n_new;

        // Route old contents: closest in-range holder first, base station as
        // the fallback. The requester keeps the content either way.
        std::vector<int> d2d_tx;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (ContentId k : sel.old_contents) {
            const auto& holders_k = offsn_holders.at(k);
            auto holder = best_holder(graph, u, holders_k, cfg.d2d_max_m);
            if (holder) {
                ++row.d2d_attempts;
                double w = *graph.edge_weight(u, *holder);
                if (unit(service_rng) < w) {
                    d2d_tx.push_back(*holder);
                    ++row.old_served_d2d;
                } else {
                    ++row.d2d_attempt_failures;
                    ++row.old_served_enb;
                }
            } else {
                ++row.old_served_enb;
            }
        }
        long long enb_served = row.old_served_enb + row.m_n0;

        auto n_pairs = static_cast<int>(d2d_tx.size());
        auto topo = InterferenceTopology::full_sharing(u, n_pairs);

        std::vector<double> d2d_rates;
        for (int i = 0; i < n_pairs; ++i) {
            double signal = draw_d2d_power(d2d_tx[static_cast<std::size_t>(i)], u);
            double enb_interference = draw_enb_signal(u); // downlink shares the subchannel
            double peer_interference = 0.0;
            for (int j = 0; j < n_pairs; ++j)
                if (topo.d2d_hears(i, j))
                    peer_interference += draw_d2d_power(d2d_tx[static_cast<std::size_t>(j)], u);
            d2d_rates.push_back(rate_d2d(signal, enb_interference, peer_interference, noise_mw));
        }

        std::vector<double> enb_rates;
        for (long long t = 0; t < enb_served; ++t) {
            double signal = draw_enb_signal(u);
            double interference = 0.0;
            for (int i = 0; i < n_pairs; ++i)
                if (topo.cellular_hears(u, i))
                    interference += draw_d2d_power(d2d_tx[static_cast<std::size_t>(i)], u);
            enb_rates.push_back(rate_cellular(signal, interference, noise_mw));
        }

        row.v_c = rate_clean(draw_enb_signal(u), noise_mw);
        row.r_c = mean_of(enb_rates);
        row.r_d = mean_of(d2d_rates);

        ResolvedCosts costs = resolve_costs(cfg.costs, row.r_d, row.r_c, row.v_c);
        double old_term = cfg.utility_form == UtilityForm::expected
                              ? expected_old
                              : static_cast<double>(sel.old_contents.size());
        row.u_user = utility_user(old_term, row.m_n0, row.r_d, row.r_c, costs);
        row.u_enb = utility_enb(old_term, row.m_n0, row.m_n, row.r_d, row.r_c, costs);
        row.offloaded = offloaded_traffic(row.m_n, enb_served, row.v_c, row.r_c, costs.c_c);

        for (ContentId k : sel.old_contents) offsn_holders.at(k).insert(u);
        for (long long i = 0; i < sel.n_new; ++i)
            offsn_holders[state.next_content_id + i].insert(u);
        state = update_prior(state, sel);

        metrics.agg.enb_data_rate_sum += std::accumulate(enb_rates.begin(), enb_rates.end(), 0.0);
        metrics.agg.d2d_data_rate_sum += std::accumulate(d2d_rates.begin(), d2d_rates.end(), 0.0);
        metrics.agg.enb_served_requests += enb_served;
        metrics.agg.d2d_served_requests += row.old_served_d2d;
        metrics.agg.d2d_attempts += row.d2d_attempts;
        metrics.agg.d2d_successes += row.old_served_d2d;
        metrics.agg.offloaded_traffic += row.offloaded;
        metrics.per_user.push_back(row);
    }

    std::sort(metrics.per_user.begin(), metrics.per_user.end(),
              [](const PerUserMetrics& l, const PerUserMetrics& r) { return l.user < r.user; });

    metrics.agg.d2d_success_ratio =
        metrics.agg.d2d_attempts > 0
            ? static_cast<double>(metrics.agg.d2d_successes) / static_cast<double>(metrics.agg.d2d_attempts)
            : 0.0;
    metrics.agg.distinct_contents = static_cast<long long>(white_state.counts.size());
    for (const auto& st : states)
        metrics.agg.distinct_contents += static_cast<long long>(st.counts.size());

    return metrics;
}

void write_user_metrics_csv(const EpisodeMetrics& metrics, std::ostream& out) {
    out << "user,offsn,n_index,m_n,m_n0,old_served_d2d,old_served_enb,"
           "d2d_attempts,d2d_attempt_failures,v_c,r_c,r_d,u_user,u_enb,offloaded\n";
    for (const auto& r : metrics.per_user) {
        out << r.user << ',' << r.offsn << ',' << r.n_index << ',' << r.m_n << ',' << r.m_n0 << ','
            << r.old_served_d2d << ',' << r.old_served_enb << ',' << r.d2d_attempts << ','
            << r.d2d_attempt_failures << ',' << dtos(r.v_c) << ',' << dtos(r.r_c) << ','
            << dtos(r.r_d) << ',' << dtos(r.u_user) << ',' << dtos(r.u_enb) << ','
            << dtos(r.offloaded) << '\n';
    }
}

void write_summary_csv(const EpisodeMetrics& metrics, std::ostream& out) {
    const auto& a = metrics.agg;
    out << "metric,value\n";
    out << "enb_data_rate_sum," << dtos(a.enb_data_rate_sum) << '\n';
    out << "d2d_data_rate_sum," << dtos(a.d2d_data_rate_sum) << '\n';
    out << "enb_served_requests," << a.enb_served_requests << '\n';
    out << "d2d_served_requests," << a.d2d_served_requests << '\n';
    out << "d2d_attempts," << a.d2d_attempts << '\n';
    out << "d2d_successes," << a.d2d_successes << '\n';
    out << "d2d_success_ratio," << dtos(a.d2d_success_ratio) << '\n';
    out << "offloaded_traffic," << dtos(a.offloaded_traffic) << '\n';
    out << "distinct_contents," << a.distinct_contents << '\n';
    out << "n_offsns," << a.n_offsns << '\n';
    out << "n_white_users," << a.n_white_users << '\n';
}

} // namespace d2d
