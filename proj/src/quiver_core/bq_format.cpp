#include "sba/quiver_core/bq_format.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sba/error.hpp"

namespace sba::quiver_core {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

struct PendingRel {
    int line;
    std::string lhs;
    std::string rhs;
};

}  // namespace

BoundQuiver parse_bq(std::string_view text, const std::string& file, NewArrowLines* newarrows) {
    BoundQuiver a;
    std::vector<PendingRel> rels;
    std::vector<std::string> specials;
    bool has_special_loop = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        auto w = words(line);
        const std::string& kw = w[0];
        try {
            if (kw == "vertex") {
                if (w.size() < 2 || w.size() > 3 || (w.size() == 3 && w[2] != "special"))
                    throw ParseError(file, lineno, "expected: vertex <label> [special]");
                a.quiver.add_vertex(w[1]);
                if (w.size() == 3) specials.push_back(w[1]);
            } else if (kw == "arrow") {
                // arrow <label>: <src> -> <tgt> [special-loop]
                if (w.size() < 5 || w[1].size() < 2 || w[1].back() != ':' || w[3] != "->" ||
                    (w.size() == 6 && w[5] != "special-loop") || w.size() > 6)
                    throw ParseError(file, lineno, "expected: arrow <label>: <src> -> <tgt> [special-loop]");
                std::string label = w[1].substr(0, w[1].size() - 1);
                bool sl = w.size() == 6;
                has_special_loop |= sl;
                a.quiver.add_arrow(label, a.quiver.vertex_id(w[2]), a.quiver.vertex_id(w[4]), sl);
            } else if (kw == "rel") {
                std::string body = trim(line.substr(3));
                size_t dash = body.find(" - ");
                if (dash == std::string::npos) {
                    if (body.find(' ') != std::string::npos) throw ParseError(file, lineno, "malformed relation");
                    rels.push_back({lineno, body, {}});
                } else {
                    std::string l = trim(body.substr(0, dash)), r = trim(body.substr(dash + 3));
                    if (l.empty() || r.empty() || l.find(' ') != std::string::npos ||
                        r.find(' ') != std::string::npos)
                        throw ParseError(file, lineno, "malformed binomial relation");
                    rels.push_back({lineno, l, r});
                }
            } else if (kw == "newarrow") {
                if (w.size() != 4 || w[2] != ":=") throw ParseError(file, lineno, "expected: newarrow <label> := <path>");
                if (newarrows) newarrows->emplace_back(w[1], w[3]);
            } else {
                throw ParseError(file, lineno, "unknown keyword '" + kw + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(file, lineno, e.what());
        }
    }

    a.admissible = !has_special_loop;
    for (const auto& s : specials) a.special_vertices.insert(a.quiver.vertex_id(s));
    for (const auto& r : rels) {
        try {
            Relation rel = r.rhs.empty() ? Relation::monomial(parse_path(a.quiver, r.lhs))
                                         : Relation::binomial(parse_path(a.quiver, r.lhs), parse_path(a.quiver, r.rhs));
            validate_relation(a.quiver, rel, a.admissible);
            a.relations.push_back(std::move(rel));
        } catch (const Error& e) {
            throw ParseError(file, r.line, e.what());
        }
    }
    return a;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

BoundQuiver read_bq_file(const std::string& path, NewArrowLines* newarrows) {
    return parse_bq(read_text_file(path), path, newarrows);
}

std::string serialize_bq(const BoundQuiver& a) {
    const Quiver& q = a.quiver;
    std::vector<std::string> vlines, alines, rlines;
    for (const auto& v : q.vertices())
        vlines.push_back("vertex " + v.label + (a.special_vertices.count(v.id) ? " special" : ""));
    for (const auto& ar : q.arrows())
        alines.push_back("arrow " + ar.label + ": " + q.vertex(ar.source).label + " -> " + q.vertex(ar.target).label +
                         (ar.special_loop ? " special-loop" : ""));
    for (const auto& r : a.relations) {
        if (r.is_monomial()) {
            rlines.push_back("rel " + path_to_string(q, r.terms[0].path));
            continue;
        }
        if (r.terms.size() != 2 || r.terms[0].coeff != -r.terms[1].coeff)
            throw Error(ErrorKind::InvalidInput, "only p - q binomials serialize: " + relation_to_string(q, r));
        std::string l = path_to_string(q, r.terms[0].path), m = path_to_string(q, r.terms[1].path);
        if (m < l) std::swap(l, m);
        rlines.push_back("rel " + l + " - " + m);
    }
    std::sort(vlines.begin(), vlines.end());
    std::sort(alines.begin(), alines.end());
    std::sort(rlines.begin(), rlines.end());
    rlines.erase(std::unique(rlines.begin(), rlines.end()), rlines.end());
    std::string out;
    for (auto* block : {&vlines, &alines, &rlines})
        for (const auto& l : *block) out += l + "\n";
    return out;
}

}  // namespace sba::quiver_core
