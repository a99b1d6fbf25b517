#include "quatgroup/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "quatgroup/arith.hpp"
#include "quatgroup/quat.hpp"

namespace quatgroup::survey {

const char* const kSurveyHeader =
    "p,a,dH,dO,index,vol_over_pi,n_generators,max_abs_x0,max_chalk_norm,johansson_x0_bound,certified,elapsed_ms";
const char* const kCompareHeader =
    "p,a,vol_over_pi,eps,max_chalk_norm,norm_bound_exact,norm_bound_literal,log10_max_chalk_norm,"
    "log10_norm_bound_exact,log10_norm_bound_literal,within_exact_bound,certified";

std::vector<std::pair<std::int64_t, std::int64_t>> surveyGrid(std::int64_t pMax, bool torsionFreeOnly) {
    if (pMax < 5) throw std::invalid_argument("pMax must be at least 5");
    std::vector<std::pair<std::int64_t, std::int64_t>> grid;
    for (std::int64_t p : arith::oddPrimesUpTo(pMax)) {
        if (p < 5) continue;
        if (torsionFreeOnly && p % 4 != 1) continue;
        for (std::int64_t a = 2; a < p; ++a) {
            if (arith::legendre(a, p) == -1) grid.emplace_back(p, a);
        }
    }
    return grid;
}

SurveyRow surveyPair(std::int64_t p, std::int64_t a, const SurveyOptions& opts) {
    SurveyRow row;
    row.p = p;
    row.a = a;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const auto vol = quat::johanssonVolume(p, a);
        row.dH = vol.dH;
        row.dO = vol.dO;
        row.unitIndex = vol.unitIndex;
        row.volOverPi = vol.volOverPi.str();

        const auto exact = fuchsian::boundReport(p, a, opts.k, fuchsian::RadiusRelation::Exact);
        const auto literal = fuchsian::entryBounds(p, a, exact.johanssonEps, fuchsian::RadiusRelation::Literal);
        row.johanssonEps = exact.johanssonEps;
        row.johanssonX0Bound = exact.x0Max;
        row.normBoundExact = exact.normBound;
        row.normBoundLiteral = literal.normBound;

        const auto domain = fuchsian::fordDomain(p, a, opts.domain);
        row.certified = domain.certified;
        row.nGenerators = static_cast<std::int64_t>(domain.sides.size());
        row.minGeneratorRadius = std::numeric_limits<double>::infinity();
        for (const auto& g : domain.generators) {
            row.maxAbsX0 = std::max(row.maxAbsX0, std::abs(g.x[0]));
            row.maxChalkNorm = std::max(row.maxChalkNorm, g.chalkNorm());
            row.minGeneratorRadius = std::min(row.minGeneratorRadius, 1.0 / std::sqrt(static_cast<double>(g.betaSq)));
        }
        if (!domain.certified) row.error = domain.message;
    } catch (const std::exception& e) {
        row.certified = false;
        row.error = e.what();
    }
    if (opts.timing) {
        row.elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                            .count();
    }
    return row;
}

std::vector<SurveyRow> runSurvey(const SurveyOptions& opts) {
    const auto grid = surveyGrid(opts.pMax, opts.torsionFreeOnly);
    std::vector<SurveyRow> rows(grid.size());
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, grid.size()));

    // largest pairs first so the slow ones do not start last
    std::vector<std::size_t> order(grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < order.size();) {
            const auto i = order[k];
            rows[i] = surveyPair(grid[i].first, grid[i].second, opts);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return rows;
}

namespace {

std::string number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void writeRow(std::ostream& os, const SurveyRow& r) {
    os << r.p << ',' << r.a << ',' << r.dH << ',' << r.dO << ',' << r.unitIndex << ',' << r.volOverPi << ','
       << r.nGenerators << ',' << r.maxAbsX0 << ',' << r.maxChalkNorm << ',' << r.johanssonX0Bound << ','
       << (r.certified ? "true" : "false") << ',' << r.elapsedMs << '\n';
}

}  // namespace

void writeSurveyCsv(std::ostream& os, const std::vector<SurveyRow>& rows) {
    os << kSurveyHeader << '\n';
    for (const auto& r : rows) writeRow(os, r);
}

void writeSurveyCsvByDiscriminant(std::ostream& os, std::vector<SurveyRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const SurveyRow& x, const SurveyRow& y) {
        return std::tie(x.dH, x.p, x.a) < std::tie(y.dH, y.p, y.a);
    });
    writeSurveyCsv(os, rows);
}

void writeCompareCsv(std::ostream& os, const std::vector<SurveyRow>& rows) {
    os << kCompareHeader << '\n';
    for (const auto& r : rows) {
        const double norm = static_cast<double>(r.maxChalkNorm);
        os << r.p << ',' << r.a << ',' << r.volOverPi << ',' << number(r.johanssonEps) << ',' << r.maxChalkNorm << ','
           << number(r.normBoundExact) << ',' << number(r.normBoundLiteral) << ','
           << (norm > 0 ? number(std::log10(norm)) : "") << ',' << number(std::log10(r.normBoundExact)) << ','
           << number(std::log10(r.normBoundLiteral)) << ',' << (norm <= r.normBoundExact ? "true" : "false") << ','
           << (r.certified ? "true" : "false") << '\n';
    }
}

std::string companionPath(const std::string& path) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "_by_dH";
    return path.substr(0, dot) + "_by_dH" + path.substr(dot);
}

}  // namespace quatgroup::survey
