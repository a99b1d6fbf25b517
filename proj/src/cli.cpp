#include "quatgroup/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "quatgroup/errors.hpp"
#include "quatgroup/io.hpp"
#include "quatgroup/survey.hpp"

namespace quatgroup::cli {

using nlohmann::json;

namespace {

struct Args {
    std::int64_t p = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t pMax = 17;
    std::string out;
    std::string svg;
    std::string element;
    double tol = 1e-9;
    std::int64_t cap = fuchsian::DomainOptions{}.hardLevelCap;
    double k = 3.0;
    bool torsionFreeOnly = false;
    unsigned threads = 0;
    bool noTiming = false;
};

void writeFile(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        writeFile(path, text);
    }
}

fuchsian::DomainOptions domainOptions(const Args& args) {
    fuchsian::DomainOptions o;
    o.tolerance = args.tol;
    o.hardLevelCap = args.cap;
    return o;
}

int cmdHilbert(const Args& args, std::ostream& out) {
    out << io::hilbertReport(args.a, args.b).dump(2) << '\n';
    return kSuccess;
}

int cmdAlgebra(const Args& args, std::ostream& out) {
    auto report = io::toJson(quat::johanssonVolume(args.p, args.a));
    report["torsion"] = args.p % 4 == 1 ? "torsion-free" : "possibly-torsion";
    out << report.dump(2) << '\n';
    return kSuccess;
}

int cmdDomain(const Args& args, std::ostream& out, std::ostream& err) {
    quat::validateGroupParameters(args.p, args.a);
    const auto domain = fuchsian::fordDomain(args.p, args.a, domainOptions(args));
    auto doc = io::toJson(domain);
    doc["volume"] = io::toJson(quat::johanssonVolume(args.p, args.a));
    doc["bounds"] = io::toJson(fuchsian::boundReport(args.p, args.a, args.k));
    doc["bounds"]["k"] = args.k;
    emit(args.out, doc.dump(2) + "\n", out);
    if (!args.svg.empty()) writeFile(args.svg, io::toSvg(domain));
    if (!domain.certified) {
        err << "domain not certified: " << domain.message << '\n';
        return kUncertified;
    }
    return kSuccess;
}

survey::SurveyOptions surveyOptions(const Args& args) {
    survey::SurveyOptions o;
    o.pMax = args.pMax;
    o.torsionFreeOnly = args.torsionFreeOnly;
    o.k = args.k;
    o.domain = domainOptions(args);
    o.threads = args.threads;
    o.timing = !args.noTiming;
    return o;
}

void reportFailures(const std::vector<survey::SurveyRow>& rows, std::ostream& err) {
    for (const auto& r : rows) {
        if (!r.error.empty()) err << "(" << r.p << "," << r.a << "): " << r.error << '\n';
    }
}

int cmdSurvey(const Args& args, std::ostream& out, std::ostream& err) {
    const auto rows = survey::runSurvey(surveyOptions(args));
    std::ostringstream main, byDH;
    survey::writeSurveyCsv(main, rows);
    survey::writeSurveyCsvByDiscriminant(byDH, rows);
    if (args.out.empty()) {
        out << main.str();
    } else {
        writeFile(args.out, main.str());
        writeFile(survey::companionPath(args.out), byDH.str());
    }
    reportFailures(rows, err);
    return kSuccess;
}

int cmdCompare(const Args& args, std::ostream& out, std::ostream& err) {
    const auto rows = survey::runSurvey(surveyOptions(args));
    std::ostringstream csv;
    survey::writeCompareCsv(csv, rows);
    emit(args.out, csv.str(), out);
    reportFailures(rows, err);
    return kSuccess;
}

int cmdReduce(const Args& args, std::ostream& out, std::ostream& err) {
    quat::validateGroupParameters(args.p, args.a);
    const auto e = enumerate::UnitElement::create(io::parseQuadruple(args.element), args.p, args.a);
    const auto domain = fuchsian::fordDomain(args.p, args.a, domainOptions(args));
    if (!domain.certified) {
        err << "domain not certified: " << domain.message << '\n';
        return kUncertified;
    }
    const auto red = fuchsian::reduceToDomain(e, domain);
    json letters = json::array();
    for (int w : red.word) letters.push_back(io::toJson(domain.generators[w]));
    bool verified = false;
    if (red.success) verified = enumerate::multiply(fuchsian::evaluateWord(red.word, domain), e).isIdentity();
    json doc = {{"element", io::toJson(e)},
                {"word", red.word},
                {"letters", letters},
                {"verified", verified},
                {"message", red.message}};
    out << doc.dump(2) << '\n';
    if (!verified) {
        err << "reduction failed: " << red.message << '\n';
        return kUncertified;
    }
    return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fundamental domains and generators of the unit groups Gamma_{p,a}", "quatgroup"};
    app.require_subcommand(1);
    Args args;

    auto addPA = [&](CLI::App* c) {
        c->add_option("--p", args.p, "odd prime p")->required();
        c->add_option("--a", args.a, "quadratic nonresidue a mod p, 1 < a < p")->required();
    };
    auto addDomainFlags = [&](CLI::App* c) {
        c->add_option("--tol", args.tol, "floating tolerance of the arc covering cross-check")->capture_default_str();
        c->add_option("--cap", args.cap, "highest alphaSq level to enumerate")->capture_default_str();
        c->add_option("--k", args.k, "divisor k > 2 of the radius cutoff eps")->capture_default_str();
    };

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbols and ramification of (a, b)");
    hilbert->add_option("--a", args.a, "first entry")->required();
    hilbert->add_option("--b", args.b, "second entry")->required();

    auto* algebra = app.add_subcommand("algebra", "ramification, volume and unit index");
    addPA(algebra);

    auto* domain = app.add_subcommand("domain", "Ford domain as JSON, optionally SVG");
    addPA(domain);
    addDomainFlags(domain);
    domain->add_option("--out", args.out, "JSON path (stdout if omitted)");
    domain->add_option("--svg", args.svg, "SVG path");

    auto* surveyCmd = app.add_subcommand("survey", "generator counts and bounds over the (p, a) grid");
    auto* compare = app.add_subcommand("compare", "largest generator norm against the norm bounds");
    for (auto* c : {surveyCmd, compare}) {
        c->add_option("--pmax", args.pMax, "largest p")->capture_default_str();
        c->add_option("--out", args.out, "CSV path (stdout if omitted)");
        c->add_flag("--torsion-free-only", args.torsionFreeOnly, "only p = 1 mod 4");
        c->add_option("--threads", args.threads, "worker threads (0: all cores)");
        c->add_flag("--no-timing", args.noTiming, "write elapsed_ms = 0");
        addDomainFlags(c);
    }

    auto* reduce = app.add_subcommand("reduce", "write an element as a word in the generators");
    addPA(reduce);
    reduce->add_option("element,--element", args.element, "x0,x1,x2,x3")->required();
    addDomainFlags(reduce);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInvalidInput;
    }

    try {
        if (*hilbert) return cmdHilbert(args, out);
        if (*algebra) return cmdAlgebra(args, out);
        if (*domain) return cmdDomain(args, out, err);
        if (*surveyCmd) return cmdSurvey(args, out, err);
        if (*compare) return cmdCompare(args, out, err);
        if (*reduce) return cmdReduce(args, out, err);
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return kInvalidInput;
}

}  // namespace quatgroup::cli
