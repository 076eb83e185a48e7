// acceptance_support.hpp -- one printed verdict line per acceptance case
//
// Every TEST_CASE in an acceptance binary is one named criterion. This
// listener prints exactly one "[PASS] <name>" or "[FAIL] <name>" line per
// case so the verdicts are readable straight from the test log, whatever
// reporter Catch2 was asked to use.

#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

namespace acceptance {

class VerdictListener : public Catch::EventListenerBase {
public:
    using EventListenerBase::EventListenerBase;

    void testCaseEnded(const Catch::TestCaseStats& stats) override {
        const bool ok = stats.totals.assertions.allPassed() && !stats.aborting;
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", stats.testInfo->name.c_str());
        std::fflush(stdout);
    }
};

} // namespace acceptance

CATCH_REGISTER_LISTENER(acceptance::VerdictListener)
