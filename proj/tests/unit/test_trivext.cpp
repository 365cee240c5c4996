#include <doctest.h>

#include <algorithm>

#include "fixture.hpp"
#include "sba/error.hpp"
#include "sba/quiver_core/basis.hpp"
#include "sba/quiver_core/iso.hpp"
#include "sba/skew_gentle/skew_gentle.hpp"
#include "sba/trivext/trivext.hpp"

using namespace sba::quiver_core;
using namespace sba::skew_gentle;
using namespace sba::trivext;

namespace {

Relation rel(const Quiver& q, const std::string& a, const std::string& b = "", int c2 = -1) {
    if (b.empty()) return Relation::monomial(parse_path(q, a));
    return Relation::binomial(parse_path(q, a), parse_path(q, b), 1, c2);
}

std::vector<std::string> arrow_labels(const Quiver& q) {
    std::vector<std::string> out;
    for (const auto& a : q.arrows()) out.push_back(a.label);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> relation_strings(const BoundQuiver& b) {
    std::vector<std::string> out;
    for (const auto& r : b.relations) out.push_back(relation_to_string(b.quiver, r));
    std::sort(out.begin(), out.end());
    return out;
}

CutSet cut_of(const Quiver& q, std::initializer_list<const char*> labels) {
    CutSet d;
    for (auto l : labels) d.arrows.insert(q.arrow_id(l));
    return d;
}

const char* const kSkewFixtures[] = {"toy.bq", "line_sp13.bq", "sec7_A.bq", "sec7_B.bq", "a2.bq", "sec74.bq"};

}  // namespace

TEST_CASE("trivial extension of the auxiliary toy algebra") {
    auto aux = auxiliary_gentle(load_bq("toy.bq"));
    auto t = trivial_extension(aux);
    CHECK(t.algebra.quiver.arrow_count() == 7);
    CHECK(t.new_arrows.size() == 2);
    const Quiver& q = t.algebra.quiver;
    CHECK(q.arrow(q.arrow_id("bp1")).source == q.vertex_id("4"));
    CHECK(q.arrow(q.arrow_id("bp1")).target == q.vertex_id("1"));
    CHECK(q.arrow(q.arrow_id("bp2")).source == q.vertex_id("3"));
    CHECK(q.arrow(q.arrow_id("bp2")).target == q.vertex_id("4"));

    auto bt = enumerate_basis(t.algebra);
    CHECK(bt.dimension() == 2 * enumerate_basis(aux).dimension());
    // Off-cycle paths and the commutation at the shared vertex 4 and 3.
    for (const auto& r : {rel(q, "bp2*bp1"), rel(q, "beta*bp2"), rel(q, "gamma*delta"), rel(q, "lambda*gamma"),
                          rel(q, "bp1*alpha*beta*gamma", "delta*lambda*bp2"),
                          rel(q, "bp2*delta*lambda", "gamma*bp1*alpha*beta"),
                          rel(q, "alpha*beta*gamma*bp1*alpha")})
        CHECK_MESSAGE(in_ideal(bt, r), relation_to_string(q, r));
    CHECK_FALSE(in_ideal(bt, rel(q, "alpha*beta*gamma*bp1")));
    CHECK(elementary_cycles(t).size() == 2);
}

TEST_CASE("trivial extension of the toy sg-presentation") {
    auto asg = admissible_presentation(load_bq("toy.bq"));
    auto t = trivial_extension(asg);
    const Quiver& q = t.algebra.quiver;
    CHECK(q.vertex_count() == 7);
    CHECK(q.arrow_count() == 12);
    CHECK(arrow_labels(q) == std::vector<std::string>{"+alpha+", "+alpha-", "+beta", "-alpha+", "-alpha-", "-beta",
                                                      "bp1+", "bp1-", "bp2", "delta", "gamma", "lambda"});
    auto bt = enumerate_basis(t.algebra);
    CHECK(bt.dimension() == 2 * enumerate_basis(asg).dimension());

    std::vector<Relation> printed = {
        // Type a
        rel(q, "+alpha+*+beta", "+alpha-*-beta"),
        rel(q, "-alpha+*+beta", "-alpha-*-beta"),
        rel(q, "bp1+*+alpha+", "bp1-*-alpha+"),
        rel(q, "bp1+*+alpha-", "bp1-*-alpha-"),
        // Type b
        rel(q, "gamma*delta"),
        rel(q, "lambda*gamma"),
        rel(q, "bp2*bp1+"),
        rel(q, "bp2*bp1-"),
        rel(q, "+beta*bp2"),
        rel(q, "-beta*bp2"),
        // Type c
        rel(q, "bp2*delta*lambda*bp2"),
        rel(q, "delta*lambda*bp2*delta"),
        rel(q, "lambda*bp2*delta*lambda"),
        rel(q, "+alpha+*+beta*gamma*bp1+*+alpha+"),
        rel(q, "+beta*gamma*bp1+*+alpha+*+beta"),
        // Type d
        rel(q, "bp1+*+alpha+*+beta*gamma", "delta*lambda*bp2"),
        rel(q, "bp2*delta*lambda", "gamma*bp1+*+alpha+*+beta"),
    };
    for (const auto& r : printed) CHECK_MESSAGE(in_ideal(bt, r), relation_to_string(q, r));
}

TEST_CASE("trivial extension agrees with the sg-algebra of the auxiliary tuple") {
    for (auto name : kSkewFixtures) {
        auto p = load_bq(name);
        auto aux = auxiliary_gentle(p);
        auto ta = trivial_extension(aux);
        SgTuple tuple;
        tuple.quiver = ta.algebra.quiver;
        tuple.sp = aux.special_vertices;
        for (const auto& r : ta.algebra.relations)
            if (r.is_monomial()) tuple.relations.push_back(r);
        for (const auto& c : ta.cycles)
            for (const auto& r : rotations(ta.algebra.quiver, c.cycle)) tuple.cycles.push_back(r);
        auto expected = sg_algebra(tuple);
        auto t = trivial_extension(admissible_presentation(p));
        CHECK_MESSAGE(are_isomorphic(t.algebra, expected).status == IsoStatus::Isomorphic, name);
    }
}

TEST_CASE("admissible and good cuts of the toy example") {
    auto toy = load_bq("toy.bq");
    auto ta = trivial_extension(auxiliary_gentle(toy));
    auto cuts = admissible_cuts(ta);
    CHECK(cuts.size() == 12);
    CHECK(good_cuts(ta).size() == 12);  // no signed vertices
    CHECK(admissible_cuts(ta, 5).size() == 5);

    auto quotient = quotient_by_cut(ta, cut_of(ta.algebra.quiver, {"bp1", "bp2"}));
    auto aux = auxiliary_gentle(toy);
    aux.special_vertices.clear();
    quotient.special_vertices.clear();
    CHECK(are_isomorphic(quotient, aux).identity);
    CHECK(relation_strings(quotient) == relation_strings(aux));

    auto t = trivial_extension(admissible_presentation(toy));
    auto good = good_cuts(t);
    CHECK(good.size() == 12);
    for (const auto& d : good) CHECK(is_good(t, d));
    CHECK(admissible_cuts(t).size() >= good.size());
    CHECK(cut_to_string(ta.algebra.quiver, cut_of(ta.algebra.quiver, {"bp2", "alpha"})) == "cut: alpha, bp2");
}

TEST_CASE("quotient edge cases") {
    auto a2 = load_bq("a2.bq");
    CHECK(relation_strings(quotient_by_arrows(a2, {})) == relation_strings(a2));
    CHECK_THROWS_AS(quotient_by_arrows(a2, {7}), sba::Error);

    BoundQuiver semi;
    semi.quiver.add_vertex("x");
    auto t = trivial_extension(semi);
    REQUIRE(t.algebra.quiver.arrow_count() == 1);
    CHECK(t.algebra.quiver.arrow(0).source == 0);
    CHECK(relation_strings(t.algebra) == std::vector<std::string>{"bp1*bp1"});
    auto cuts = admissible_cuts(t);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].arrows == std::set<ArrowId>{0});
    CHECK(good_cuts(t).size() == 1);
}

TEST_CASE("good cuts round-trip through the trivial extension") {
    for (auto name : kSkewFixtures) {
        auto t = trivial_extension(admissible_presentation(load_bq(name)));
        auto good = good_cuts(t);
        CHECK(!good.empty());
        for (const auto& d : good) {
            auto quotient = quotient_by_cut(t, d);
            auto back = trivial_extension(quotient);
            CHECK_MESSAGE(are_isomorphic(back.algebra, t.algebra).status == IsoStatus::Isomorphic,
                          name << " " << cut_to_string(t.algebra.quiver, d));
        }
    }
}

TEST_CASE("repetitive window of the line with special ends") {
    auto line = load_bq("line_sp13.bq");
    auto w = repetitive_window(line, -1, 1);
    const Quiver& q = w.algebra.quiver;
    CHECK(q.vertex_count() == 9);
    CHECK(w.connecting.size() == 4);
    // p1 = beta*f3 from 2 to 3, p2 = f1*alpha from 1 to 2.
    auto c1 = q.find_arrow("pbar1[-1]");
    auto c2 = q.find_arrow("pbar2[0]");
    REQUIRE(c1);
    REQUIRE(c2);
    CHECK(q.vertex(q.arrow(*c1).source).label == "3[-1]");
    CHECK(q.vertex(q.arrow(*c1).target).label == "2[0]");
    CHECK(q.vertex(q.arrow(*c2).source).label == "2[0]");
    CHECK(q.vertex(q.arrow(*c2).target).label == "1[1]");
    CHECK(w.algebra.special_vertices.size() == 6);
    CHECK(repetitive_window(line, 0, 0).connecting.empty());
    CHECK_THROWS_AS(repetitive_window(line, 1, 0), sba::Error);

    auto a2 = repetitive_window(load_bq("a2.bq"), 0, 1);
    auto rels = relation_strings(a2.algebra);
    CHECK(std::find(rels.begin(), rels.end(), "alpha[0]*pbar1[0]*alpha[1]") != rels.end());
}

TEST_CASE("reflection as a quotient of the trivial extension") {
    auto a = load_bq("sec74.bq");
    auto r = reflect(a, a.quiver.vertex_id("1"), Direction::Minus);
    CHECK(is_skew_gentle(r).pass);
    CHECK(r.quiver.vertex_count() == 5);
    CHECK(special_vertices_of(r).size() == 2);
    CHECK(arrow_labels(r.quiver) ==
          std::vector<std::string>{"alpha2", "alpha3", "beta1", "beta3", "bp1", "f1", "f2"});
    const Quiver& q = r.quiver;
    ArrowId bp = q.arrow_id("bp1");
    CHECK(q.vertex(q.arrow(bp).source).label == "4");
    CHECK(q.vertex(q.arrow(bp).target).label == "1");
    CHECK(q.arrow(q.arrow_id("f1")).source == q.arrow(bp).target);
    // Only the two inherited zero relations remain besides the special-loop ones.
    std::vector<std::string> ordinary;
    for (const auto& rel : r.relations) {
        bool loop = false;
        for (const auto& term : rel.terms)
            for (ArrowId x : term.path.arrows) loop = loop || q.arrow(x).special_loop;
        if (!loop) ordinary.push_back(relation_to_string(q, rel));
    }
    std::sort(ordinary.begin(), ordinary.end());
    CHECK(ordinary == std::vector<std::string>{"alpha3*beta3", "beta1*alpha3"});

    CHECK_THROWS_AS(reflect(a, a.quiver.vertex_id("3"), Direction::Minus), sba::Error);
}

TEST_CASE("reflection properties on the fixtures") {
    for (auto name : kSkewFixtures) {
        auto p = load_bq(name);
        auto aux = auxiliary_gentle(p);
        auto t = trivial_extension(admissible_presentation(p));
        for (const auto& v : aux.quiver.vertices()) {
            for (auto dir : {Direction::Minus, Direction::Plus}) {
                bool source = aux.quiver.in_arrows(v.id).empty();
                bool sink = aux.quiver.out_arrows(v.id).empty();
                if (dir == Direction::Minus ? !source : !sink) {
                    CHECK_THROWS_AS(reflect(p, v.id, dir), sba::Error);
                    continue;
                }
                auto r = reflect(p, v.id, dir);
                CHECK_MESSAGE(is_skew_gentle(r).pass, name << " " << v.label);
                auto tr = trivial_extension(admissible_presentation(r));
                CHECK_MESSAGE(are_isomorphic(tr.algebra, t.algebra).status == IsoStatus::Isomorphic,
                              name << " " << v.label);
                // The reflected vertex becomes a sink (source); reflecting back restores p.
                auto raux = auxiliary_gentle(r);
                auto image = raux.quiver.find_vertex(v.label);
                REQUIRE(image);
                auto opposite = dir == Direction::Minus ? Direction::Plus : Direction::Minus;
                auto back = reflect(r, *image, opposite);
                CHECK_MESSAGE(are_isomorphic(admissible_presentation(back), admissible_presentation(p)).status ==
                                  IsoStatus::Isomorphic,
                              name << " " << v.label);
            }
        }
    }
}
