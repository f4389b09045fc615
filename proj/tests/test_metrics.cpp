#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "vep/metrics.hpp"
#include "vep/rng.hpp"
#include "vep/types.hpp"

using namespace vep;

TEST_SUITE("metrics") {

TEST_CASE("confusion counts by hand") {
    const std::vector<std::uint8_t> truth{1, 0, 1, 0};

    auto cm = confusion(truth, truth);
    CHECK(cm.tp == 2);
    CHECK(cm.tn == 2);
    CHECK(cm.fp == 0);
    CHECK(cm.fn == 0);

    std::vector<std::uint8_t> inverted{0, 1, 0, 1};
    cm = confusion(inverted, truth);
    CHECK(cm.tp == 0);
    CHECK(cm.tn == 0);
    CHECK(cm.fp + cm.fn == 4);

    cm = confusion(std::vector<std::uint8_t>{1, 1, 0, 0}, truth);
    CHECK(cm.tp == 1);
    CHECK(cm.fp == 1);
    CHECK(cm.fn == 1);
    CHECK(cm.tn == 1);

    CHECK_THROWS_AS(confusion(std::vector<std::uint8_t>{1}, truth), DataError);
    CHECK_THROWS_AS(confusion(std::vector<std::uint8_t>{}, std::vector<std::uint8_t>{}),
                    DataError);
}

TEST_CASE("balanced-set fixture: DTMC column") {
    const auto r = report(ConfusionMatrix{7237, 1023, 2156, 8869});
    CHECK(r.acc == doctest::Approx(0.84).epsilon(0.012));
    CHECK(r.tpr == doctest::Approx(0.77).epsilon(0.013));
    CHECK(r.fpr == doctest::Approx(0.10).epsilon(0.1));
    CHECK(r.gm == doctest::Approx(0.83).epsilon(0.012));
    CHECK(r.nmcc == doctest::Approx(0.84).epsilon(0.012));
}

TEST_CASE("unbalanced-set fixture: kNN column") {
    const auto r = report(ConfusionMatrix{142, 97, 48, 18998});
    CHECK(r.acc == doctest::Approx(0.99).epsilon(0.011));
    CHECK(r.tpr == doctest::Approx(0.75).epsilon(0.014));
    CHECK(r.fpr < 0.02);
    CHECK(r.gm == doctest::Approx(0.86).epsilon(0.012));
    CHECK(r.nmcc == doctest::Approx(0.83).epsilon(0.013));
}

TEST_CASE("balanced-set fixture: kNN column") {
    const auto r = report(ConfusionMatrix{9221, 4639, 172, 5253});
    CHECK(r.tpr == doctest::Approx(0.98).epsilon(0.011));
    CHECK(r.fpr == doctest::Approx(0.47).epsilon(0.022));
    CHECK(r.nmcc == doctest::Approx(0.78).epsilon(0.013));
}

TEST_CASE("uninformative symmetric matrix") {
    const auto r = report(ConfusionMatrix{25, 25, 25, 25});
    CHECK(r.acc == 0.5);
    CHECK(r.mcc == 0.0);
    CHECK(r.nmcc == 0.5);
    CHECK_FALSE(r.degenerate.any());
}

TEST_CASE("zero-denominator conventions flag and zero out") {
    // no positives in truth: tpr/fnr undefined
    auto r = report(ConfusionMatrix{0, 3, 0, 7});
    CHECK(r.tpr == 0.0);
    CHECK(r.fnr == 0.0);
    CHECK(r.degenerate.tpr);
    CHECK(r.degenerate.mcc);
    CHECK(r.mcc == 0.0);
    CHECK(r.nmcc == 0.5);

    // no negatives in truth: tnr/fpr undefined
    r = report(ConfusionMatrix{5, 0, 2, 0});
    CHECK(r.fpr == 0.0);
    CHECK(r.tnr == 0.0);
    CHECK(r.degenerate.tnr);

    CHECK_THROWS_AS(report(ConfusionMatrix{0, 0, 0, 0}), DataError);
}

TEST_CASE("properties over random confusion matrices") {
    auto rng = Rng::stream(31337, 11);
    for (int trial = 0; trial < 2000; ++trial) {
        ConfusionMatrix cm{rng.next_below(50), rng.next_below(50), rng.next_below(50),
                           rng.next_below(50)};
        if (cm.total() == 0) cm.tn = 1;
        const auto r = report(cm);

        CHECK(r.acc >= 0.0);
        CHECK(r.acc <= 1.0);
        for (double rate : {r.tpr, r.fpr, r.tnr, r.fnr, r.gm, r.nmcc}) {
            CHECK(rate >= 0.0);
            CHECK(rate <= 1.0);
        }
        CHECK(r.mcc >= -1.0);
        CHECK(r.mcc <= 1.0);
        CHECK(r.nmcc == (r.mcc + 1.0) / 2.0);

        if (cm.tp + cm.fn > 0) CHECK(r.tpr + r.fnr == doctest::Approx(1.0).epsilon(1e-12));
        if (cm.tn + cm.fp > 0) CHECK(r.tnr + r.fpr == doctest::Approx(1.0).epsilon(1e-12));

        // scaling all counts leaves every rate unchanged
        const std::uint64_t scale = 1 + rng.next_below(9);
        const auto scaled =
            report(ConfusionMatrix{cm.tp * scale, cm.fp * scale, cm.fn * scale, cm.tn * scale});
        CHECK(scaled.acc == doctest::Approx(r.acc).epsilon(1e-12));
        CHECK(scaled.tpr == doctest::Approx(r.tpr).epsilon(1e-12));
        CHECK(scaled.fpr == doctest::Approx(r.fpr).epsilon(1e-12));
        CHECK(scaled.gm == doctest::Approx(r.gm).epsilon(1e-12));
        CHECK(scaled.mcc == doctest::Approx(r.mcc).epsilon(1e-12));

        // class swap leaves mcc unchanged
        const auto swapped = report(ConfusionMatrix{cm.tn, cm.fn, cm.fp, cm.tp});
        CHECK(swapped.mcc == doctest::Approx(r.mcc).epsilon(1e-12));
    }
}

TEST_CASE("permutation invariance of the whole report") {
    auto rng = Rng::stream(8, 21);
    const std::size_t n = 500;
    std::vector<std::uint8_t> pred(n), truth(n);
    for (std::size_t i = 0; i < n; ++i) {
        pred[i] = rng.next_below(2) ? 1 : 0;
        truth[i] = rng.next_below(2) ? 1 : 0;
    }
    const auto base = report(confusion(pred, truth));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(i)]);
    std::vector<std::uint8_t> pred2(n), truth2(n);
    for (std::size_t i = 0; i < n; ++i) {
        pred2[i] = pred[order[i]];
        truth2[i] = truth[order[i]];
    }
    const auto shuffled = report(confusion(pred2, truth2));
    CHECK(shuffled.cm.tp == base.cm.tp);
    CHECK(shuffled.cm.fp == base.cm.fp);
    CHECK(shuffled.cm.fn == base.cm.fn);
    CHECK(shuffled.cm.tn == base.cm.tn);
    CHECK(shuffled.mcc == base.mcc);
}

TEST_CASE("random predictions give mcc near zero at n = 1e5") {
    auto rng = Rng::stream(4242, 5);
    const std::size_t n = 100000;
    for (int trial = 0; trial < 5; ++trial) {
        const double p = 0.2 + 0.6 * rng.next_double();
        const double q = 0.2 + 0.6 * rng.next_double();
        std::vector<std::uint8_t> truth(n), pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = rng.next_double() < p ? 1 : 0;
            pred[i] = rng.next_double() < q ? 1 : 0;
        }
        const auto r = report(confusion(pred, truth));
        CHECK(std::abs(r.mcc) < 0.02);
        CHECK(r.nmcc == doctest::Approx(0.5).epsilon(0.04));
    }
}

}  // TEST_SUITE
