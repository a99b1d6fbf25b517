#pragma once

// Survey harness over the (p, a) grid: one row per pair, CSV output.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "quatgroup/fuchsian.hpp"

namespace quatgroup::survey {

/// Every (p, a) with p an odd prime in [5, pMax], 1 < a < p and a a
/// nonresidue mod p, ordered by (p, a). torsionFreeOnly keeps p = 1 mod 4.
std::vector<std::pair<std::int64_t, std::int64_t>> surveyGrid(std::int64_t pMax, bool torsionFreeOnly);

struct SurveyOptions {
    std::int64_t pMax = 17;
    bool torsionFreeOnly = false;
    double k = 3.0;
    fuchsian::DomainOptions domain;
    unsigned threads = 0;  // 0: hardware concurrency
    bool timing = true;    // false writes elapsed_ms = 0, for byte-identical reruns
};

struct SurveyRow {
    std::int64_t p = 0;
    std::int64_t a = 0;
    std::int64_t dH = 0;
    std::int64_t dO = 0;
    std::int64_t unitIndex = 0;
    std::string volOverPi;
    std::int64_t nGenerators = 0;  // number of sides
    std::int64_t maxAbsX0 = 0;
    std::int64_t maxChalkNorm = 0;
    std::int64_t johanssonX0Bound = 0;
    bool certified = false;
    std::int64_t elapsedMs = 0;

    // not written to the survey CSV
    double johanssonEps = 0;
    double minGeneratorRadius = 0;
    double normBoundExact = 0;
    double normBoundLiteral = 0;
    std::string error;
};

/// Never throws for a grid pair: failures leave certified = false and set error.
SurveyRow surveyPair(std::int64_t p, std::int64_t a, const SurveyOptions& opts);

/// Rows for the whole grid, computed on a worker pool and returned in grid order.
std::vector<SurveyRow> runSurvey(const SurveyOptions& opts);

extern const char* const kSurveyHeader;
extern const char* const kCompareHeader;

void writeSurveyCsv(std::ostream& os, const std::vector<SurveyRow>& rows);
/// Same rows ordered by (dH, p, a).
void writeSurveyCsvByDiscriminant(std::ostream& os, std::vector<SurveyRow> rows);
/// Empirical max Chalk norm against the exact and literal norm bounds, with log10 columns.
void writeCompareCsv(std::ostream& os, const std::vector<SurveyRow>& rows);

/// "out.csv" -> "out_by_dH.csv".
std::string companionPath(const std::string& path);

}  // namespace quatgroup::survey
