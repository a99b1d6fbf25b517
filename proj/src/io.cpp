#include "quatgroup/io.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace quatgroup::io {

using nlohmann::json;

namespace {

json point(fuchsian::Complex z) { return json::array({z.real(), z.imag()}); }

json formJson(const quat::TernaryForm& f) {
    json c = json::array();
    for (const auto& x : f.coefficients) c.push_back(x.str());
    return c;
}

}  // namespace

json toJson(const enumerate::UnitElement& g) { return json::array({g.x[0], g.x[1], g.x[2], g.x[3]}); }

json toJson(const quat::VolumeReport& r) {
    json factors = json::array();
    for (const auto& f : r.localFactors) {
        factors.push_back({{"q", f.q}, {"eichler", f.eichler}, {"norm_index", f.normIndex}, {"factor", f.factor.str()}});
    }
    json ramified = json::array();
    for (const auto& v : r.ramified) ramified.push_back(v.str());
    return {
        {"p", r.p},
        {"a", r.a},
        {"d_O", r.dO},
        {"d_H", r.dH},
        {"ramified", ramified},
        {"local_factors", factors},
        {"vol_over_pi", r.volOverPi.str()},
        {"maximal_vol_over_pi", r.maximalVolOverPi.str()},
        {"unit_index", r.unitIndex},
        {"ternary_form",
         {{"computed", formJson(r.rawForm)}, {"computed_diagonal", r.rawForm.diagonal}, {"normalized", formJson(r.normalizedForm)}}},
    };
}

json toJson(const fuchsian::BoundReport& b) {
    return {
        {"chalk_n", b.chalk.n},
        {"chalk_a1", b.chalk.a1},
        {"chalk_growth_factor", b.chalk.growthFactor},
        {"johansson_eps", b.johanssonEps},
        {"norm_bound", b.normBound},
        {"coord_bounds", {b.x0Max, b.x1Max, b.x2Max, b.x3Max}},
    };
}

json toJson(const fuchsian::FordDomain& d) {
    const bool closed = !d.sides.empty();
    json gens = json::array();
    for (const auto& g : d.generators) gens.push_back(toJson(g));

    json sides = json::array();
    json pairing = json::array();
    for (const auto& s : d.sides) {
        const auto c = fuchsian::isometricCircle(fuchsian::toDisc(s.owner));
        sides.push_back({{"owner", toJson(s.owner)},
                         {"generator", s.generator},
                         {"start", point(s.start)},
                         {"end", point(s.end)},
                         {"paired_with", s.pairedWith},
                         {"center", point(c.center)},
                         {"radius", c.radius}});
        pairing.push_back(s.pairedWith);
    }
    json vertices = json::array();
    for (const auto& v : d.vertices) vertices.push_back(point(v));

    return {
        {"p", d.p},
        {"a", d.a},
        {"certified", d.certified},
        {"message", d.message},
        {"level_reached", d.levelReached},
        {"closure_level", d.closureLevel},
        {"elements_seen", d.elementsSeen},
        {"area", closed ? json(d.area) : json(nullptr)},
        {"area_over_pi", closed ? json(d.area / std::numbers::pi) : json(nullptr)},
        {"genus", d.genus ? json(*d.genus) : json(nullptr)},
        {"torsion_free", d.torsionFree},
        {"arcs_covered", d.arcsCovered},
        {"generators", gens},
        {"sides", sides},
        {"pairing", pairing},
        {"vertices", vertices},
        {"angles", d.angles},
    };
}

json hilbertReport(std::int64_t a, std::int64_t b) {
    json symbols = json::object();
    for (const auto& v : arith::candidatePlaces(a, b)) symbols[v.str()] = arith::hilbertSymbol(a, b, v);
    const auto ram = arith::ramification(a, b);
    json ramified = json::array();
    for (const auto& v : ram.places) ramified.push_back(v.str());
    return {{"a", a}, {"b", b}, {"symbols", symbols}, {"ramified", ramified}, {"d_H", ram.discriminant},
            {"definite", ram.definite}};
}

std::string toSvg(const fuchsian::FordDomain& d, const SvgOptions& opts) {
    const double half = opts.size / 2.0;
    const double scale = half * 0.95;
    auto X = [&](fuchsian::Complex z) { return half + scale * z.real(); };
    auto Y = [&](fuchsian::Complex z) { return half - scale * z.imag(); };

    std::ostringstream os;
    os.precision(6);
    os << std::fixed;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size << "\" height=\"" << opts.size
       << "\" viewBox=\"0 0 " << opts.size << " " << opts.size << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << scale
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    if (opts.circles) {
        os << "<g fill=\"none\" stroke=\"#9ab\" stroke-width=\"0.5\">\n";
        for (const auto& g : d.generators) {
            const auto c = fuchsian::isometricCircle(fuchsian::toDisc(g));
            os << "<circle cx=\"" << X(c.center) << "\" cy=\"" << Y(c.center) << "\" r=\"" << scale * c.radius
               << "\"/>\n";
        }
        os << "</g>\n";
    }

    if (!d.sides.empty()) {
        os << "<path fill=\"#e8eef8\" stroke=\"#1a3d7c\" stroke-width=\"1.2\" d=\"";
        os << "M " << X(d.sides.front().start) << " " << Y(d.sides.front().start);
        for (const auto& s : d.sides) {
            const auto c = fuchsian::isometricCircle(fuchsian::toDisc(s.owner));
            const auto u = s.start - c.center;
            const auto w = s.end - c.center;
            // counterclockwise about the center in the plane is clockwise on screen
            const int sweep = (u.real() * w.imag() - u.imag() * w.real()) > 0 ? 1 : 0;
            const double r = scale * c.radius;
            os << " A " << r << " " << r << " 0 0 " << sweep << " " << X(s.end) << " " << Y(s.end);
        }
        os << " Z\"/>\n";
    }

    if (opts.vertexDots) {
        os << "<g fill=\"#c0392b\">\n";
        for (const auto& v : d.vertices) os << "<circle cx=\"" << X(v) << "\" cy=\"" << Y(v) << "\" r=\"2\"/>\n";
        os << "</g>\n";
    }
    os << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"2\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

std::array<std::int64_t, 4> parseQuadruple(const std::string& text) {
    std::array<std::int64_t, 4> x{};
    std::istringstream is(text);
    std::string item;
    int k = 0;
    while (std::getline(is, item, ',')) {
        if (k == 4) throw std::invalid_argument("expected four comma-separated integers");
        std::size_t used = 0;
        try {
            x[k] = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer: '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw std::invalid_argument("not an integer: '" + item + "'");
        }
        ++k;
    }
    if (k != 4) throw std::invalid_argument("expected four comma-separated integers");
    return x;
}

}  // namespace quatgroup::io
