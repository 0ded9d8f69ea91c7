#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "d2d/onsn.hpp"

using namespace d2d;

TEST_CASE("first user never sees old contents and draws Poisson(alpha) new ones") {
    IbpState state;
    state.alpha = 8.0;

    Rng rng = make_rng(1, 4);
    const int n = 100000;
    double mean_new = 0.0;
    for (int i = 0; i < n; ++i) {
        auto sel = ibp_select(state, rng);
        CHECK(sel.old_contents.empty());
        mean_new += double(sel.n_new);
    }
    mean_new /= n;
    CHECK(mean_new == doctest::Approx(8.0).epsilon(0.02));
}

TEST_CASE("inclusion frequency tracks the popularity ratio") {
    IbpState state;
    state.alpha = 8.0;
    state.n_seen = 3;
    state.counts = {{0, 2}};
    state.next_content_id = 1;

    Rng rng = make_rng(2, 4);
    const int n = 100000;
    int included = 0;
    for (int i = 0; i < n; ++i) {
        auto sel = ibp_select(state, rng);
        if (!sel.old_contents.empty()) {
            CHECK(sel.old_contents == std::vector<ContentId>{0});
            ++included;
        }
    }
    CHECK(std::fabs(double(included) / n - 0.5) < 0.01);
}

TEST_CASE("ibp_select is a pure draw and deterministic under a fixed seed") {
    IbpState state;
    state.alpha = 3.0;
    state.n_seen = 4;
    state.counts = {{0, 2}, {1, 4}, {5, 1}};
    state.next_content_id = 6;
    IbpState before = state;

    Rng r1 = make_rng(9, 4);
    Rng r2 = make_rng(9, 4);
    auto a = ibp_select(state, r1);
    auto b = ibp_select(state, r2);

    CHECK(a.old_contents == b.old_contents);
    CHECK(a.n_new == b.n_new);
    CHECK(state.n_seen == before.n_seen);
    CHECK(state.counts == before.counts);
    CHECK(state.next_content_id == before.next_content_id);
}

TEST_CASE("selections reference existing contents in ascending order") {
    IbpState state;
    state.alpha = 5.0;
    state.n_seen = 6;
    state.counts = {{2, 3}, {4, 6}, {7, 1}, {9, 5}};
    state.next_content_id = 10;

    Rng rng = make_rng(31, 4);
    for (int i = 0; i < 2000; ++i) {
        auto sel = ibp_select(state, rng);
        for (std::size_t k = 0; k < sel.old_contents.size(); ++k) {
            CHECK(state.counts.count(sel.old_contents[k]) == 1);
            if (k > 0) CHECK(sel.old_contents[k - 1] < sel.old_contents[k]);
        }
        CHECK(sel.total() == static_cast<long long>(sel.old_contents.size()) + sel.n_new);
    }
}

TEST_CASE("update_prior counter arithmetic") {
    IbpState state;
    state.alpha = 2.0;
    state.n_seen = 3;
    state.counts = {{0, 2}};
    state.next_content_id = 1;

    Selection sel;
    sel.old_contents = {0};
    sel.n_new = 1;

    auto next = update_prior(state, sel);
    CHECK(next.n_seen == 4);
    CHECK(next.counts == std::map<ContentId, long long>{{0, 3}, {1, 1}});
    CHECK(next.next_content_id == 2);

    auto idle = update_prior(state, Selection{});
    CHECK(idle.n_seen == 4);
    CHECK(idle.counts == state.counts);
    CHECK(idle.next_content_id == state.next_content_id);
}

TEST_CASE("update_prior rejects unknown content ids") {
    IbpState state;
    state.alpha = 2.0;
    state.n_seen = 1;
    state.counts = {{0, 1}};
    state.next_content_id = 1;

    Selection sel;
    sel.old_contents = {42};
    CHECK_THROWS_AS(update_prior(state, sel), std::invalid_argument);
}

TEST_CASE("successive updates equal one batched recount") {
    IbpState state;
    state.alpha = 4.0;

    Rng rng = make_rng(12, 4);
    std::vector<Selection> selections;
    IbpState stepped = state;
    for (int n = 0; n < 10; ++n) {
        auto sel = ibp_select(stepped, rng);
        selections.push_back(sel);
        stepped = update_prior(stepped, sel);
    }

    // Recount from scratch: every old pick is one increment, every new pick
    // inserts the next fresh id at count one.
    std::map<ContentId, long long> recount;
    ContentId next_id = 0;
    for (const auto& sel : selections) {
        for (ContentId k : sel.old_contents) ++recount[k];
        for (long long i = 0; i < sel.n_new; ++i) recount[next_id++] = 1;
    }

    CHECK(stepped.n_seen == 10);
    CHECK(stepped.counts == recount);
    CHECK(stepped.next_content_id == next_id);
}

TEST_CASE("counts never exceed the number of users seen") {
    IbpState state;
    state.alpha = 6.0;
    Rng rng = make_rng(4, 4);
    for (int n = 0; n < 40; ++n) {
        state = update_prior(state, ibp_select(state, rng));
        for (const auto& [content, m_k] : state.counts) {
            CHECK(m_k >= 1);
            CHECK(m_k <= state.n_seen);
        }
    }
}

TEST_CASE("expected_library_size closed forms") {
    CHECK(expected_library_size(1.0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expected_library_size(8.0, 4) == doctest::Approx(50.0 / 3.0).epsilon(1e-12));
    CHECK(expected_library_size(2.5, 0) == 0.0);
    CHECK_THROWS_AS(expected_library_size(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(expected_library_size(1.0, -1), std::invalid_argument);
}

TEST_CASE("library size matches the harmonic mean prediction") {
    const double alpha = 8.0;
    const int users = 32;
    const int chains = 10000;

    Rng rng = make_rng(6, 4);
    double mean_distinct = 0.0;
    for (int c = 0; c < chains; ++c) {
        IbpState state;
        state.alpha = alpha;
        for (int n = 0; n < users; ++n) state = update_prior(state, ibp_select(state, rng));
        mean_distinct += double(state.counts.size());
    }
    mean_distinct /= chains;
    CHECK(mean_distinct == doctest::Approx(expected_library_size(alpha, users)).epsilon(0.02));
}

TEST_CASE("write_counts_csv emits ascending id rows") {
    IbpState state;
    state.counts = {{3, 2}, {0, 5}, {7, 1}};
    std::ostringstream out;
    write_counts_csv(state, out);
    CHECK(out.str() == "content_id,m_k\n0,5\n3,2\n7,1\n");
}
