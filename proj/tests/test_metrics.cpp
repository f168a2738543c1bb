#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "azitrack/metrics.hpp"

using namespace azitrack;

namespace {

TrackResult tracks_from(const std::vector<std::vector<double>>& az) {
    TrackResult r;
    r.num_speakers = int(az.front().size());
    for (const auto& row : az) {
        std::vector<TrackPoint> pts;
        for (double a : row) pts.push_back(TrackPoint{wrap(a), 1e-4});
        r.points.push_back(pts);
    }
    return r;
}

TruthTable truth_from(const std::vector<std::vector<double>>& az, bool active = true) {
    TruthTable t;
    for (const auto& row : az) {
        std::vector<TruthPoint> pts;
        for (double a : row) pts.push_back(TruthPoint{wrap(a), active});
        t.push_back(pts);
    }
    return t;
}

// independent permutation scan used as the assignment oracle
std::vector<int> brute_assign(const TrackResult& tracks, const TruthTable& truth) {
    const int q = tracks.num_speakers;
    std::vector<int> perm(q), best(q);
    std::iota(perm.begin(), perm.end(), 0);
    best = perm;
    double best_cost = 1e300;
    do {
        double cost = 0.0;
        for (std::size_t f = 0; f < truth.size(); ++f) {
            for (int t = 0; t < q; ++t) {
                if (!truth[f][perm[t]].active) continue;
                cost += std::abs(ang_diff(tracks.points[f][t].az, truth[f][perm[t]].az));
            }
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

TEST_CASE("assignment identity and swap") {
    const std::vector<std::vector<double>> az = {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
    const auto tracks = tracks_from(az);
    const auto truth = truth_from(az);
    CHECK(assign_tracks(tracks, truth) == std::vector<int>{0, 1});

    const auto swapped = truth_from({{1.0, -1.0}, {1.0, -1.0}, {1.0, -1.0}});
    CHECK(assign_tracks(tracks, swapped) == std::vector<int>{1, 0});
}

TEST_CASE("assignment matches the brute-force oracle") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int trial = 0; trial < 200; ++trial) {
        const int q = 2 + trial % 2;
        std::vector<std::vector<double>> taz(20), gaz(20);
        for (int f = 0; f < 20; ++f) {
            for (int i = 0; i < q; ++i) {
                taz[f].push_back(u(rng));
                gaz[f].push_back(u(rng));
            }
        }
        const auto tracks = tracks_from(taz);
        const auto truth = truth_from(gaz);
        CHECK(assign_tracks(tracks, truth) == brute_assign(tracks, truth));
    }
}

TEST_CASE("rlmae hand cases") {
    const std::vector<std::vector<double>> gaz(10, {0.5, -0.5});
    const auto truth = truth_from(gaz);

    SUBCASE("perfect tracks give zero") {
        CHECK(rlmae(tracks_from(gaz), truth, {0, 1}) == 0.0);
    }
    SUBCASE("2 degree offset on one speaker averages to 1 degree") {
        std::vector<std::vector<double>> taz(10, {0.5 + deg2rad(2.0), -0.5});
        CHECK(rlmae(tracks_from(taz), truth, {0, 1}) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("wrap-aware error across +-pi") {
        const std::vector<std::vector<double>> g(5, {deg2rad(-179.0), 0.0});
        const std::vector<std::vector<double>> t(5, {deg2rad(179.0), 0.0});
        CHECK(rlmae(tracks_from(t), truth_from(g), {0, 1}) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("no active frames is an error") {
        const auto silent = truth_from(gaz, false);
        CHECK_THROWS_AS(rlmae(tracks_from(gaz), silent, {0, 1}), MetricUndefinedError);
    }
}

TEST_CASE("rlmae invariant under global rotation") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<std::vector<double>> taz(30), gaz(30);
    for (int f = 0; f < 30; ++f) {
        taz[f] = {u(rng), u(rng)};
        gaz[f] = {u(rng), u(rng)};
    }
    const double base = rlmae(tracks_from(taz), truth_from(gaz), {0, 1});
    for (double delta : {0.7, -2.1, 3.0}) {
        auto taz2 = taz;
        auto gaz2 = gaz;
        for (auto& row : taz2)
            for (auto& a : row) a += delta;
        for (auto& row : gaz2)
            for (auto& a : row) a += delta;
        CHECK(rlmae(tracks_from(taz2), truth_from(gaz2), {0, 1}) ==
              doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("optimal assignment never loses to another bijection") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> taz(15), gaz(15);
        for (int f = 0; f < 15; ++f) {
            taz[f] = {u(rng), u(rng), u(rng)};
            gaz[f] = {u(rng), u(rng), u(rng)};
        }
        const auto tracks = tracks_from(taz);
        const auto truth = truth_from(gaz);
        const auto best = assign_tracks(tracks, truth);
        const double best_mae = rlmae(tracks, truth, best);
        std::vector<int> perm = {0, 1, 2};
        do {
            CHECK(best_mae <= rlmae(tracks, truth, perm) + 1e-12);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("identity switch counting") {
    const int frames = 300;
    std::vector<std::vector<double>> gaz(frames, {-1.0, 1.0});
    const auto truth = truth_from(gaz);

    SUBCASE("perfect tracks have no switches") {
        CHECK(identity_switches(tracks_from(gaz), truth, {0, 1}) == 0);
    }
    SUBCASE("persistent exchange counts one event per track") {
        std::vector<std::vector<double>> taz(frames);
        for (int f = 0; f < frames; ++f) {
            taz[f] = (f < 100) ? std::vector<double>{-1.0, 1.0}
                               : std::vector<double>{1.0, -1.0};
        }
        CHECK(identity_switches(tracks_from(taz), truth, {0, 1}) == 2);
    }
    SUBCASE("a 3-frame flicker is below the persistence threshold") {
        std::vector<std::vector<double>> taz(frames, {-1.0, 1.0});
        for (int f = 100; f < 103; ++f) taz[f] = {1.0, 1.0};
        CHECK(identity_switches(tracks_from(taz), truth, {0, 1}, 25) == 0);
    }
    SUBCASE("small errors never register as switches") {
        std::mt19937_64 rng(91);
        std::normal_distribution<double> n(0.0, 0.05);
        std::vector<std::vector<double>> taz(frames);
        for (int f = 0; f < frames; ++f) taz[f] = {-1.0 + n(rng), 1.0 + n(rng)};
        CHECK(identity_switches(tracks_from(taz), truth, {0, 1}) == 0);
    }
}

TEST_CASE("evaluate composes the full report") {
    std::vector<std::vector<double>> gaz(60, {0.2, -0.9});
    std::vector<std::vector<double>> taz(60, {0.2 + deg2rad(1.0), -0.9});
    const auto report = evaluate(tracks_from(taz), truth_from(gaz));
    CHECK(report.assignment == std::vector<int>{0, 1});
    CHECK(report.rlmae_deg == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(report.identity_switches == 0);
    CHECK(report.frames_evaluated == 120);
    CHECK(report.per_speaker_mae_deg[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(report.per_speaker_mae_deg[1] == doctest::Approx(0.0));
}

TEST_CASE("count mismatch is rejected") {
    const auto tracks = tracks_from({{0.0, 1.0}});
    TruthTable truth = {{TruthPoint{wrap(0.0), true}}};
    CHECK_THROWS_AS(assign_tracks(tracks, truth), ValidationError);
}
