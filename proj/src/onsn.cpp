#include "d2d/onsn.hpp"

#include <ostream>
#include <stdexcept>

namespace d2d {

Selection ibp_select(const IbpState& state, Rng& rng) {
    if (!(state.alpha > 0.0))
        throw std::invalid_argument("ibp_select: alpha must be positive");
    if (state.n_seen < 0)
        throw std::invalid_argument("ibp_select: negative n_seen");

    double n = static_cast<double>(state.n_seen + 1);
    Selection sel;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& [content, m_k] : state.counts) {
        if (unit(rng) < static_cast<double>(m_k) / n)
            sel.old_contents.push_back(content);
    }
    sel.n_new = std::poisson_distribution<long long>(state.alpha / n)(rng);
    return sel;
}

IbpState update_prior(const IbpState& state, const Selection& selection) {
    if (selection.n_new < 0)
        throw std::invalid_argument("update_prior: negative n_new");

    IbpState next = state;
    for (ContentId k : selection.old_contents) {
        auto it = next.counts.find(k);
        if (it == next.counts.end())
            throw std::invalid_argument("update_prior: unknown content id " + std::to_string(k));
        ++it->second;
    }
    for (long long i = 0; i < selection.n_new; ++i)
        next.counts.emplace(next.next_content_id++, 1);
    ++next.n_seen;
    return next;
}

double expected_library_size(double alpha, long long n_users) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("expected_library_size: alpha must be positive");
    if (n_users < 0)
        throw std::invalid_argument("expected_library_size: negative user count");

    double harmonic = 0.0;
    for (long long i = 1; i <= n_users; ++i) harmonic += 1.0 / static_cast<double>(i);
    return alpha * harmonic;
}

void write_counts_csv(const IbpState& state, std::ostream& out) {
    out << "content_id,m_k\n";
    for (const auto& [content, m_k] : state.counts)
        out << content << ',' << m_k << '\n';
}

} // namespace d2d
