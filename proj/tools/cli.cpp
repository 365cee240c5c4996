#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <future>
#include <ostream>
#include <sstream>

#include "sba/brauer/brauer.hpp"
#include "sba/dissection/dissection.hpp"
#include "sba/error.hpp"
#include "sba/quiver_core/basis.hpp"
#include "sba/quiver_core/bq_format.hpp"
#include "sba/quiver_core/cartan.hpp"
#include "sba/quiver_core/gentle.hpp"
#include "sba/quiver_core/iso.hpp"
#include "sba/skew_gentle/skew_gentle.hpp"
#include "sba/trivext/trivext.hpp"

namespace sba::cli {

namespace {

using json = nlohmann::ordered_json;
using quiver_core::BoundQuiver;
using quiver_core::Quiver;
using quiver_core::VertexId;

enum class Format { Bq, Sbg, Dis };

Format format_of(const std::string& path) {
    auto ends = [&](const char* ext) {
        std::string e(ext);
        return path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0;
    };
    if (ends(".bq")) return Format::Bq;
    if (ends(".sbg")) return Format::Sbg;
    if (ends(".dis")) return Format::Dis;
    throw ParseError(path, 0, "unknown file extension (expected .bq, .sbg or .dis)");
}

const char* format_name(Format f) {
    switch (f) {
        case Format::Bq: return "bq";
        case Format::Sbg: return "sbg";
        case Format::Dis: return "dis";
    }
    return "";
}

// Presentation carried by any of the three formats.
BoundQuiver load_presentation(const std::string& path) {
    switch (format_of(path)) {
        case Format::Bq: return quiver_core::read_bq_file(path);
        case Format::Sbg: return brauer::skew_brauer_algebra(brauer::read_sbg_file(path));
        case Format::Dis: return dissection::quiver_from_dissection(dissection::read_dis_file(path));
    }
    return {};
}

BoundQuiver admissible(const BoundQuiver& p) { return p.admissible ? p : skew_gentle::admissible_presentation(p); }

BoundQuiver load_admissible(const std::string& path) { return admissible(load_presentation(path)); }

std::vector<VertexId> vertices_by_label(const Quiver& q) {
    std::vector<VertexId> out;
    for (const auto& v : q.vertices()) out.push_back(v.id);
    std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) { return q.vertex(a).label < q.vertex(b).label; });
    return out;
}

std::vector<std::string> sorted_relations(const BoundQuiver& a) {
    std::vector<std::string> out;
    for (const auto& r : a.relations) out.push_back(quiver_core::relation_to_string(a.quiver, r));
    std::sort(out.begin(), out.end());
    return out;
}

json algebra_json(const BoundQuiver& a) {
    const Quiver& q = a.quiver;
    json j;
    j["admissible"] = a.admissible;
    j["vertices"] = json::array();
    for (VertexId v : vertices_by_label(q))
        j["vertices"].push_back({{"label", q.vertex(v).label}, {"special", a.special_vertices.count(v) > 0}});
    std::vector<const quiver_core::Arrow*> arrows;
    for (const auto& x : q.arrows()) arrows.push_back(&x);
    std::sort(arrows.begin(), arrows.end(), [](auto* x, auto* y) { return x->label < y->label; });
    j["arrows"] = json::array();
    for (auto* x : arrows)
        j["arrows"].push_back({{"label", x->label},
                               {"source", q.vertex(x->source).label},
                               {"target", q.vertex(x->target).label},
                               {"special_loop", x->special_loop}});
    j["relations"] = sorted_relations(a);
    return j;
}

json verdict_json(const Verdict& v) {
    json j{{"pass", v.pass}};
    if (!v.pass) {
        j["condition"] = v.condition;
        j["detail"] = v.detail;
        j["witnesses"] = v.witnesses;
    }
    return j;
}

std::string verdict_text(const Verdict& v) { return "condition " + v.condition + ": " + v.detail; }

json dissection_json(const dissection::OrbifoldDissection& d) {
    json j;
    j["arcs"] = json::array();
    for (const auto& a : d.arcs)
        j["arcs"].push_back({{"label", a.label},
                             {"kind", a.kind == dissection::ArcKind::Special   ? "special"
                                      : a.kind == dissection::ArcKind::Pendant ? "pendant"
                                                                               : "regular"}});
    j["polygons"] = json::array();
    for (const auto& p : d.polygons) {
        json sides = json::array();
        for (int s : p.sides) sides.push_back(s == dissection::kBoundary ? "BOUNDARY" : d.arcs.at(s).label);
        j["polygons"].push_back(sides);
    }
    j["punctures"] = json::array();
    for (const auto& p : d.punctures) {
        json arcs = json::array();
        for (int a : p.arcs) arcs.push_back(d.arcs.at(a).label);
        j["punctures"].push_back({{"label", p.label}, {"arcs", arcs}});
    }
    return j;
}

// Text and structured forms of one command's result. `status` is the exit status.
struct Output {
    std::string text;
    json data;
    int status = 0;
};

// ---------------------------------------------------------------------------------------

Output check_file(const std::string& path) {
    Output o;
    Format f = format_of(path);
    o.data = {{"file", path}, {"format", format_name(f)}};
    std::string what;
    Verdict v;
    if (f == Format::Bq) {
        BoundQuiver a = quiver_core::read_bq_file(path);
        Verdict sg = skew_gentle::is_skew_gentle(a);
        if (a.admissible && quiver_core::is_gentle(a)) what = "gentle";
        else if (sg) what = "skew-gentle";
        else what = "bound quiver, not skew-gentle (" + verdict_text(sg) + ")";
    } else if (f == Format::Sbg) {
        v = brauer::validate_graph(brauer::read_sbg_file(path));
        what = "skew-Brauer graph";
    } else {
        auto d = dissection::read_dis_file(path);
        v = dissection::validate_dissection(d);
        what = "dissection, " + std::to_string(d.polygons.size()) + " polygons";
        if (v) what += ", " + std::to_string(dissection::trivial_polygons(d).size()) + " trivial";
    }
    o.data["verdict"] = verdict_json(v);
    o.data["class"] = what;
    if (v) {
        o.text = path + ": ok (" + what + ")\n";
    } else {
        o.text = path + ": invalid " + format_name(f) + " (" + verdict_text(v) + ")\n";
        o.status = 1;
    }
    return o;
}

Output algebra_output(const BoundQuiver& a) { return {quiver_core::serialize_bq(a), algebra_json(a)}; }

Output trivext_output(const std::string& path) {
    BoundQuiver a = load_admissible(path);
    auto t = trivext::trivial_extension(a);
    Output o = algebra_output(t.algebra);
    std::vector<std::pair<std::string, std::string>> lines;
    for (const auto& [arrow, p] : t.new_arrows)
        lines.emplace_back(t.algebra.quiver.arrow(arrow).label, quiver_core::path_to_string(t.source->quiver, p));
    std::sort(lines.begin(), lines.end());
    json nj = json::object();
    for (const auto& [label, p] : lines) {
        o.text += "newarrow " + label + " := " + p + "\n";
        nj[label] = p;
    }
    o.data["newarrows"] = nj;
    return o;
}

Output cuts_output(const std::string& path, bool good, long limit, std::ostream* stream) {
    auto t = trivext::trivial_extension(load_admissible(path));
    Output o;
    o.data = {{"kind", good ? "good" : "admissible"}, {"cuts", json::array()}};
    long count = 0;
    auto emit = [&](const trivext::CutSet& c) {
        if (limit >= 0 && count >= limit) return false;
        ++count;
        std::string line = trivext::cut_to_string(t.algebra.quiver, c) + "\n";
        if (stream) *stream << line << std::flush;
        else o.text += line;
        json labels = json::array();
        std::vector<std::string> ls;
        for (auto a : c.arrows) ls.push_back(t.algebra.quiver.arrow(a).label);
        std::sort(ls.begin(), ls.end());
        o.data["cuts"].push_back(ls);
        return !(limit >= 0 && count >= limit);
    };
    if (limit != 0) {
        if (good) trivext::enumerate_good_cuts(t, emit);
        else trivext::enumerate_admissible_cuts(t, emit);
    }
    o.data["count"] = count;
    return o;
}

Output quotient_output(const std::string& path, const std::vector<std::string>& labels) {
    auto t = trivext::trivial_extension(load_admissible(path));
    trivext::CutSet d;
    for (const auto& l : labels) d.arrows.insert(t.algebra.quiver.arrow_id(l));
    d.kind = trivext::is_good(t, d) ? trivext::CutKind::Good : trivext::CutKind::Admissible;
    Output o = algebra_output(trivext::quotient_by_cut(t, d));
    o.data["good"] = d.kind == trivext::CutKind::Good;
    return o;
}

Output reflect_output(const std::string& path, const std::string& vertex, trivext::Direction dir) {
    if (format_of(path) == Format::Dis) {
        auto d = dissection::read_dis_file(path);
        auto arc = d.find_arc(vertex);
        if (!arc) throw Error(ErrorKind::UnknownVertex, "no arc " + vertex);
        auto r = dissection::geometric_reflection(d, *arc, dir);
        return {dissection::serialize_dis(r), dissection_json(r)};
    }
    BoundQuiver p = load_presentation(path);
    return algebra_output(trivext::reflect(p, p.quiver.vertex_id(vertex), dir));
}

Output classify_file(const std::string& path) {
    if (format_of(path) != Format::Sbg) throw Error(ErrorKind::InvalidInput, path + ": classify expects a .sbg file");
    auto c = brauer::classify_rep_type(brauer::read_sbg_file(path));
    Output o;
    o.text = brauer::to_string(c);
    o.data = {{"file", path},
              {"type", c.type == brauer::RepType::Finite ? "Finite" : "Infinite"},
              {"branch", c.branch},
              {"reason", c.reason}};
    if (!c.witness.empty()) o.data["witness"] = c.witness;
    return o;
}

Output cartan_output(const std::string& path, bool graded, bool det_only) {
    BoundQuiver a = load_admissible(path);
    auto basis = quiver_core::enumerate_basis(a);
    auto c = quiver_core::cartan(a, basis);
    const Quiver& q = a.quiver;
    auto order = vertices_by_label(q);
    Output o;
    json labels = json::array(), ord = json::array(), qg = json::array();
    for (VertexId x : order) {
        labels.push_back(q.vertex(x).label);
        json r1 = json::array(), r2 = json::array();
        for (VertexId y : order) {
            r1.push_back(c.ordinary[x][y].get_str());
            r2.push_back(c.q_graded[x][y].to_string());
        }
        ord.push_back(r1);
        qg.push_back(r2);
    }
    o.data = {{"vertices", labels}, {"ordinary", ord}, {"q_graded", qg}, {"det", c.det.get_str()},
              {"det_q", c.det_q.to_string()}};
    std::ostringstream s;
    if (!det_only) {
        for (VertexId x : order) {
            s << q.vertex(x).label << ":";
            for (size_t k = 0; k < order.size(); ++k) {
                VertexId y = order[k];
                s << (k ? (graded ? ", " : " ") : " ");
                if (graded) s << c.q_graded[x][y].to_string();
                else s << c.ordinary[x][y].get_str();
            }
            s << "\n";
        }
    }
    if (det_only || graded) {
        if (graded) s << "det_q = " << c.det_q.to_string() << "; ";
        s << "det = " << c.det.get_str() << "\n";
    }
    o.text = s.str();
    return o;
}

Output projectives_output(const std::string& path, const std::string& vertex) {
    BoundQuiver a = load_admissible(path);
    auto basis = quiver_core::enumerate_basis(a);
    std::vector<VertexId> targets;
    if (vertex.empty()) targets = vertices_by_label(a.quiver);
    else targets.push_back(a.quiver.vertex_id(vertex));
    Output o;
    o.data = json::array();
    for (VertexId x : targets) {
        auto p = brauer::projective_layers(basis, x);
        o.text += "P(" + p.top + "):";
        for (size_t i = 0; i < p.layers.size(); ++i) {
            o.text += i ? " |" : "";
            for (const auto& f : p.layers[i]) o.text += " " + f;
        }
        o.text += "  (dim " + std::to_string(p.dimension) + ", socle " + p.socle + ")\n";
        o.data.push_back({{"vertex", p.top}, {"layers", p.layers}, {"socle", p.socle}, {"dimension", p.dimension}});
    }
    return o;
}

Output dissect_output(const std::string& path, bool algebra) {
    auto d = dissection::read_dis_file(path);
    auto t = dissection::trivext_tuple(d);
    if (algebra) return algebra_output(skew_gentle::sg_algebra(t.tuple));
    BoundQuiver b;
    b.quiver = t.tuple.quiver;
    b.relations = t.tuple.relations;
    b.relations.insert(b.relations.end(), t.differences.begin(), t.differences.end());
    b.special_vertices = t.tuple.sp;
    Output o = algebra_output(b);
    const Quiver& q = t.tuple.quiver;
    std::vector<std::string> cycles;
    for (const auto& c : t.tuple.cycles) cycles.push_back(quiver_core::path_to_string(q, c));
    std::sort(cycles.begin(), cycles.end());
    for (const auto& c : cycles) o.text += "cycle " + c + "\n";
    json pj = json::array();
    for (const auto& p : dissection::computed_punctures(d)) {
        std::vector<std::string> arcs;
        for (int a : p.arcs) arcs.push_back(d.arcs[a].label);
        std::sort(arcs.begin(), arcs.end());
        std::string line = "puncture " + p.label + ":";
        for (size_t i = 0; i < arcs.size(); ++i) line += (i ? ", " : " ") + arcs[i];
        o.text += line + "\n";
        pj.push_back({{"label", p.label}, {"arcs", arcs}});
    }
    std::string formula = dissection::q_cartan_det_formula(d).to_string();
    o.text += "det_q formula = " + formula + "\n";
    o.data["cycles"] = cycles;
    o.data["punctures"] = pj;
    o.data["det_q_formula"] = formula;
    return o;
}

Output move_output(const std::string& path, int polygon, std::optional<int> angle, const std::string& pendant) {
    auto d = dissection::read_dis_file(path);
    dissection::MovePosition m;
    m.polygon = polygon - 1;
    m.angle = angle;
    if (!pendant.empty()) {
        auto arc = d.find_arc(pendant);
        if (!arc) throw Error(ErrorKind::InvalidPosition, "no arc " + pendant);
        m.pendant = *arc;
    }
    auto r = dissection::contraction_addition(d, m);
    return {dissection::serialize_dis(r), dissection_json(r)};
}

Output iso_output(const std::string& a_path, const std::string& b_path, long budget) {
    BoundQuiver a = load_admissible(a_path), b = load_admissible(b_path);
    auto r = quiver_core::are_isomorphic(a, b, budget);
    Output o;
    o.text = quiver_core::describe(r, a.quiver, b.quiver) + "\n";
    const char* status = r.status == quiver_core::IsoStatus::Isomorphic      ? "isomorphic"
                         : r.status == quiver_core::IsoStatus::NotIsomorphic ? "not isomorphic"
                                                                             : "undecided";
    o.data = {{"status", status}, {"identity", r.identity}};
    if (r) {
        json vm = json::object(), am = json::object();
        for (size_t v = 0; v < r.vertex_map.size(); ++v)
            vm[a.quiver.vertex(static_cast<int>(v)).label] = b.quiver.vertex(r.vertex_map[v]).label;
        for (size_t x = 0; x < r.arrow_map.size(); ++x)
            am[a.quiver.arrow(static_cast<int>(x)).label] =
                (r.arrow_scale[x] < 0 ? "-" : "") + b.quiver.arrow(r.arrow_map[x]).label;
        o.data["vertex_map"] = vm;
        o.data["arrow_map"] = am;
    } else {
        o.data["detail"] = r.detail;
    }
    if (r.status == quiver_core::IsoStatus::BudgetExhausted) o.status = 1;
    return o;
}

// Runs `f` on every file with up to `jobs` files in flight; results keep input order.
std::vector<Output> for_files(const std::vector<std::string>& files, int jobs, Output (*f)(const std::string&)) {
    std::vector<Output> out(files.size());
    jobs = std::max(1, jobs);
    for (size_t start = 0; start < files.size(); start += jobs) {
        std::vector<std::future<Output>> batch;
        size_t end = std::min(files.size(), start + static_cast<size_t>(jobs));
        for (size_t i = start; i < end; ++i) batch.push_back(std::async(std::launch::async, f, files[i]));
        for (size_t i = start; i < end; ++i) out[i] = batch[i - start].get();
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Skew-Brauer graph algebras, trivial extensions and dissections", "sba"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    int jobs = 1;
    app.add_flag("--json", as_json, "Emit JSON instead of canonical text");
    app.add_option("--jobs", jobs, "Files handled in parallel (check, classify)")->check(CLI::PositiveNumber);

    std::vector<std::string> files;
    std::string file, file2, vertex, pendant;
    std::vector<std::string> cut;
    bool good = false, plus = false, minus = false, graded = false, det = false, algebra = false;
    long limit = -1, budget = 2'000'000;
    int polygon = 0, angle = -1;

    auto* check = app.add_subcommand("check", "Validate .bq, .sbg or .dis files");
    check->add_option("files", files, "Input files")->required();
    auto* build = app.add_subcommand("build", "Presentation of a skew-Brauer graph or dissection");
    build->add_option("file", file, "Input file")->required();
    auto* trivext = app.add_subcommand("trivext", "Trivial extension of the admissible presentation");
    trivext->add_option("file", file, "Input file")->required();
    auto* cuts = app.add_subcommand("cuts", "Admissible or good cuts of the trivial extension");
    cuts->add_option("file", file, "Input file")->required();
    cuts->add_flag("--good", good, "Only good cuts");
    cuts->add_option("--limit", limit, "Stop after this many cuts");
    auto* quotient = app.add_subcommand("quotient", "Quotient of the trivial extension by a cut");
    quotient->add_option("file", file, "Input file")->required();
    quotient->add_option("--cut", cut, "Arrow labels of the trivial extension")->delimiter(',')->required();
    auto* reflect = app.add_subcommand("reflect", "Reflection at a source (--minus) or sink (--plus)");
    reflect->add_option("file", file, "Input .bq or .dis file")->required();
    reflect->add_option("--vertex,--arc", vertex, "Vertex or arc label")->required();
    auto* plus_flag = reflect->add_flag("--plus", plus, "Positive reflection at a sink");
    auto* minus_flag = reflect->add_flag("--minus", minus, "Negative reflection at a source");
    plus_flag->excludes(minus_flag);
    auto* classify = app.add_subcommand("classify", "Representation type of skew-Brauer graphs");
    classify->add_option("files", files, "Input .sbg files")->required();
    auto* cartan = app.add_subcommand("cartan", "Cartan matrix and determinants");
    cartan->add_option("file", file, "Input file")->required();
    cartan->add_flag("--q", graded, "Path-length graded matrix");
    cartan->add_flag("--det", det, "Print determinants only");
    auto* projectives = app.add_subcommand("projectives", "Radical layers of indecomposable projectives");
    projectives->add_option("file", file, "Input file")->required();
    projectives->add_option("--vertex", vertex, "Only this vertex");
    auto* dissect = app.add_subcommand("dissect", "Tuple of a dissection");
    dissect->add_option("file", file, "Input .dis file")->required();
    dissect->add_flag("--algebra", algebra, "Print the algebra of the tuple instead");
    auto* move = app.add_subcommand("move", "Contraction-addition on a dissection");
    move->add_option("file", file, "Input .dis file")->required();
    move->add_option("--polygon", polygon, "Polygon number, from 1 in file order")->required();
    auto* angle_opt = move->add_option("--angle", angle, "Angle index");
    auto* pendant_opt = move->add_option("--pendant", pendant, "Pendant arc label");
    angle_opt->excludes(pendant_opt);
    auto* iso = app.add_subcommand("iso", "Isomorphism test of two presentations");
    iso->add_option("first", file, "First file")->required();
    iso->add_option("second", file2, "Second file")->required();
    iso->add_option("--budget", budget, "Search node budget");

    std::vector<std::string> argv_store{"sba"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        std::vector<Output> results;
        bool streamed = false;
        if (check->parsed()) {
            results = for_files(files, jobs, check_file);
        } else if (build->parsed()) {
            results.push_back(algebra_output(load_presentation(file)));
        } else if (trivext->parsed()) {
            results.push_back(trivext_output(file));
        } else if (cuts->parsed()) {
            streamed = !as_json;
            results.push_back(cuts_output(file, good, limit, streamed ? &out : nullptr));
        } else if (quotient->parsed()) {
            results.push_back(quotient_output(file, cut));
        } else if (reflect->parsed()) {
            if (!plus && !minus) {
                err << "reflect: give --plus or --minus\n";
                return 2;
            }
            results.push_back(reflect_output(file, vertex, plus ? trivext::Direction::Plus : trivext::Direction::Minus));
        } else if (classify->parsed()) {
            results = for_files(files, jobs, classify_file);
            if (files.size() > 1)
                for (size_t i = 0; i < files.size(); ++i) results[i].text = files[i] + ": " + results[i].text;
            for (auto& r : results) r.text += "\n";
        } else if (cartan->parsed()) {
            results.push_back(cartan_output(file, graded, det));
        } else if (projectives->parsed()) {
            results.push_back(projectives_output(file, vertex));
        } else if (dissect->parsed()) {
            results.push_back(dissect_output(file, algebra));
        } else if (move->parsed()) {
            if (angle_opt->count() == 0 && pendant_opt->count() == 0) {
                err << "move: give --angle or --pendant\n";
                return 2;
            }
            results.push_back(move_output(file, polygon, angle_opt->count() ? std::optional<int>(angle) : std::nullopt, pendant));
        } else if (iso->parsed()) {
            results.push_back(iso_output(file, file2, budget));
        }
        int status = 0;
        for (const auto& r : results) status = std::max(status, r.status);
        if (as_json) {
            json j = json::array();
            for (auto& r : results) j.push_back(r.data);
            out << (j.size() == 1 ? j[0] : j).dump(2) << "\n";
        } else if (!streamed) {
            for (const auto& r : results) out << r.text;
        }
        return status;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sba::cli
