// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include "sollink/verify.hpp"

#include <cstdio>
#include <iostream>
#include <string>

using namespace sollink;

namespace {

constexpr double kOracleSeconds = 5.0;
constexpr double kCrossSeconds = 10.0;
constexpr double kRatioSeconds = 30.0;
constexpr double kRatioSpread = 1e-8;
constexpr int kRatioKRange = 80;
constexpr double kX23RelErr = 1e-5;
constexpr double kEigenRelErr = 1e-3;
constexpr double kJumpAbs = 1e-8;
constexpr double kContinuityAbs = 1e-10;
constexpr double kBetaAbs = 1e-10;
constexpr double kWChange = 1e-8;
constexpr std::uint64_t kSeed = 20261016;

struct Outcome {
    bool passed = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double seconds)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f s", seconds);
    std::cout << (o.passed ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": " << o.detail << " (" << buf << ")" << std::endl;
    failures += !o.passed;
}

template <class F>
void criterion(int id, const std::string& title, double limit, F&& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0 && secs >= limit) {
        o.passed = false;
        o.detail += "; exceeded time limit " + std::to_string(int(limit)) + " s";
    }
    report(id, title, o, secs);
}

Outcome from(const CheckResult& r) { return {r.passed, r.detail}; }

Outcome all_of(std::initializer_list<CheckResult> rs)
{
    Outcome o;
    for (const auto& r : rs) {
        o.passed = o.passed && r.passed;
        o.detail += (o.detail.empty() ? "" : "; ") + r.detail;
    }
    return o;
}

std::string run_binary(const std::string& args, int* status)
{
    std::string cmd = std::string(SOLLINK_CLI_PATH) + " " + args + " 2>&1";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        *status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    *status = pclose(p);
    return out;
}

} // namespace

int main()
{
    criterion(1, "Sol linking oracle equivalence", kOracleSeconds, [] {
        return from(check_sol_oracle(kSeed, 100));
    });

    criterion(2, "general vs closed-form boundary linking", kCrossSeconds, [] {
        Outcome o = from(check_cross_formula({5, 13, 17}, 30));
        FieldData f = make_field(5);
        const std::pair<int, int> spots[] = {{1, 2}, {4, 4}, {5, 4}};
        for (auto [n, want] : spots) {
            Rational got = link_boundary(f, n, 1);
            if (got != want) {
                o.passed = false;
                o.detail += "; d=5 Lk(" + std::to_string(n) + ",1) = " + to_string(got) + ", expected " + std::to_string(want);
            }
        }
        if (o.passed) o.detail += "; d=5 spot values 2, 4, 4";
        return o;
    });

    criterion(3, "link table rationality and integrality", 0, [] {
        return from(check_link_tables({5, 13, 17}, 30));
    });

    criterion(4, "min-series / Lk ratio constancy", kRatioSeconds, [] {
        return from(check_ratio({5, 13}, 20, kRatioKRange, kRatioSpread));
    });

    criterion(5, "fundamental units against Pell search", 0, [] {
        return from(check_units(100));
    });

    criterion(6, "norm-class enumeration against brute force", 0, [] {
        return from(check_norm_classes({2, 3, 5, 13, 17, 21}, 50));
    });

    criterion(7, "special-function identities", 0, [] {
        return all_of({check_x23(kSeed, 50, kX23RelErr), check_eigen(kSeed + 1, 50, kEigenRelErr), check_jumps(kSeed + 2, 50, kJumpAbs, kContinuityAbs), check_quadrature(kBetaAbs)});
    });

    criterion(8, "W(tau) truncation stability at tau = i, d = 5", 0, [] {
        return from(check_w_stability(5, {0, 1}, kWChange));
    });

    criterion(9, "cap normalization and exact boundary", 0, [] {
        return from(check_caps(kSeed, 50));
    });

    criterion(10, "CLI determinism", 0, [] {
        const char* configs[] = {
            "field-info --d 13",
            "sol-link --f 2,1,1,1 --a 1,0 --b 0,1",
            "sol-cap --f 5,2,2,1 --a 3,-1 --offset 1/3,2/7",
            "boundary --d 17 --n 16",
            "lk-table --d 13 --nmax 12",
            "qexp --d 5 --m 1 --nmax 30",
            "w-eval --d 5 --tau 0.25+0.9i --k-range 40 --box 30",
            "ratio-test --d 13 --nmax 20 --k-range 80 --format csv",
            "self-test --seed 7",
        };
        Outcome o;
        int runs = 0;
        for (const char* c : configs) {
            int s1 = 0, s2 = 0;
            std::string a = run_binary(c, &s1), b = run_binary(c, &s2);
            runs += 2;
            if (s1 != 0 || s2 != 0 || a != b || a.empty()) {
                o.passed = false;
                o.detail = std::string("'") + c + "' differs or failed";
                return o;
            }
        }
        o.detail = std::to_string(runs) + " runs byte-identical";
        return o;
    });

    std::cout << (failures == 0 ? "all 10 criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
