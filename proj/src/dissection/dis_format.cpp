#include <algorithm>
#include <sstream>

#include "sba/dissection/dissection.hpp"
#include "sba/error.hpp"
#include "sba/quiver_core/bq_format.hpp"

namespace sba::dissection {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string item; std::getline(in, item, ',');) out.push_back(trim(item));
    return out;
}

const char* kind_word(ArcKind k) {
    switch (k) {
        case ArcKind::Special: return " special";
        case ArcKind::Pendant: return " pendant";
        case ArcKind::Regular: break;
    }
    return "";
}

}  // namespace

std::optional<int> OrbifoldDissection::find_arc(std::string_view label) const {
    for (size_t i = 0; i < arcs.size(); ++i)
        if (arcs[i].label == label) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<int> OrbifoldDissection::arc_sides(int polygon) const {
    const auto& s = polygons.at(polygon).sides;
    auto b = std::find(s.begin(), s.end(), kBoundary);
    if (b == s.end() || std::count(s.begin(), s.end(), kBoundary) != 1)
        throw Error(ErrorKind::InvalidInput, "polygon " + std::to_string(polygon + 1) + " needs exactly one BOUNDARY side");
    std::vector<int> out(b + 1, s.end());
    out.insert(out.end(), s.begin(), b);
    return out;
}

bool OrbifoldDissection::is_trivial(int polygon) const {
    auto s = arc_sides(polygon);
    return s.size() == 1 && arcs.at(s[0]).kind != ArcKind::Pendant;
}

OrbifoldDissection parse_dis(std::string_view text, const std::string& file) {
    OrbifoldDissection d;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    auto arc_of = [&](const std::string& label) {
        auto a = d.find_arc(label);
        if (!a) throw ParseError(file, lineno, "unknown arc " + label);
        return *a;
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        size_t colon = line.find(':');
        std::istringstream head(line.substr(0, colon));
        std::vector<std::string> w;
        for (std::string t; head >> t;) w.push_back(t);
        if (w.empty()) throw ParseError(file, lineno, "missing keyword");
        if (w[0] == "arc") {
            if (colon != std::string::npos || w.size() < 2 || w.size() > 3)
                throw ParseError(file, lineno, "expected: arc <label> [special|pendant]");
            if (d.find_arc(w[1])) throw ParseError(file, lineno, "duplicate arc " + w[1]);
            ArcKind kind = ArcKind::Regular;
            if (w.size() == 3) {
                if (w[2] == "special") kind = ArcKind::Special;
                else if (w[2] == "pendant") kind = ArcKind::Pendant;
                else throw ParseError(file, lineno, "unknown arc kind '" + w[2] + "'");
            }
            if (w[1] == "BOUNDARY") throw ParseError(file, lineno, "BOUNDARY is reserved");
            d.arcs.push_back({w[1], kind});
        } else if (w[0] == "polygon") {
            if (colon == std::string::npos || w.size() != 1) throw ParseError(file, lineno, "expected: polygon: <side>, ...");
            Polygon p;
            p.line = lineno;
            for (const std::string& item : split_list(line.substr(colon + 1))) {
                if (item.empty()) throw ParseError(file, lineno, "empty side");
                p.sides.push_back(item == "BOUNDARY" ? kBoundary : arc_of(item));
            }
            d.polygons.push_back(std::move(p));
        } else if (w[0] == "puncture") {
            if (colon == std::string::npos || w.size() != 2)
                throw ParseError(file, lineno, "expected: puncture <label>: <arc>, ...");
            Puncture p{w[1], {}};
            for (const std::string& item : split_list(line.substr(colon + 1))) {
                if (item.empty()) throw ParseError(file, lineno, "empty arc entry");
                p.arcs.push_back(arc_of(item));
            }
            d.punctures.push_back(std::move(p));
        } else {
            throw ParseError(file, lineno, "unknown keyword '" + w[0] + "'");
        }
    }
    return d;
}

OrbifoldDissection read_dis_file(const std::string& path) { return parse_dis(quiver_core::read_text_file(path), path); }

std::string serialize_dis(const OrbifoldDissection& d) {
    std::ostringstream out;
    for (const Arc& a : d.arcs) out << "arc " << a.label << kind_word(a.kind) << "\n";
    for (const Polygon& p : d.polygons) {
        out << "polygon:";
        for (size_t i = 0; i < p.sides.size(); ++i)
            out << (i ? ", " : " ") << (p.sides[i] == kBoundary ? std::string("BOUNDARY") : d.arcs.at(p.sides[i]).label);
        out << "\n";
    }
    for (const Puncture& p : d.punctures) {
        out << "puncture " << p.label << ":";
        for (size_t i = 0; i < p.arcs.size(); ++i) out << (i ? ", " : " ") << d.arcs.at(p.arcs[i]).label;
        out << "\n";
    }
    return out.str();
}

}  // namespace sba::dissection
