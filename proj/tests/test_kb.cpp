#include <doctest.h>

#include "semcloud/error.hpp"
#include "semcloud/kb.hpp"
#include "semcloud/schema.hpp"

using namespace semcloud;

namespace {

const Name& rdf_type() { return KnowledgeBase::type_predicate(); }

Name n(const char* text) { return Name::parse(text); }

}  // namespace

TEST_SUITE("kb") {

TEST_CASE("names default to the dbb prefix") {
  CHECK(n("Mast").str() == "dbb:Mast");
  CHECK(n("swrlb:lessThan").prefix() == "swrlb");
  CHECK(n("swrlb:lessThan").local() == "lessThan");
  CHECK_THROWS_AS(Name::parse(""), KbError);
  CHECK_THROWS_AS(Name::parse("a:b:c"), KbError);
  CHECK_THROWS_AS(Name("dbb", "has space"), KbError);
  CHECK(n("a:x") < n("b:a"));
}

TEST_CASE("literals") {
  CHECK(Literal::real(2.5).str() == "\"2.500000\"^^real");
  CHECK(Literal::real(-0.0).str() == "\"0.000000\"^^real");
  CHECK(Literal::string("ab").str() == "\"ab\"^^string");
  CHECK(Literal::boolean(true).str() == "\"true\"^^bool");
  CHECK_THROWS_AS(Literal::real(std::numeric_limits<double>::infinity()), KbError);
  CHECK(Literal::real(1.0) == Literal::real(1.0));
  CHECK_FALSE(Literal::real(1.0) == Literal::string("1"));
}

TEST_CASE("class hierarchy and subsumption") {
  KnowledgeBase kb;
  seed_schema(kb);
  kb.declare_class(n("Mast"), {vocab::FacilityElement});
  CHECK(kb.is_subclass(n("Mast"), vocab::FacilityElement));
  CHECK(kb.is_subclass(n("Mast"), vocab::DomainConcept));
  CHECK_FALSE(kb.is_subclass(vocab::DomainConcept, n("Mast")));

  KnowledgeBase chain;
  chain.declare_class(n("a"));
  chain.declare_class(n("b"), {n("a")});
  chain.declare_class(n("c"), {n("b")});
  CHECK(chain.is_subclass(n("c"), n("a")));
  CHECK(chain.class_depth(n("c")) == 2);
  CHECK(chain.subclasses_of(n("a")) == std::vector<Name>{n("a"), n("b"), n("c")});
}

TEST_CASE("cycles and unknown parents are rejected") {
  KnowledgeBase kb;
  CHECK_THROWS_AS(kb.declare_class(n("x"), {n("x")}), KbError);
  kb.declare_class(n("a"));
  kb.declare_class(n("b"), {n("a")});
  CHECK_THROWS_AS(kb.declare_class(n("a"), {n("b")}), KbError);
  CHECK_THROWS_AS(kb.declare_class(n("c"), {n("missing")}), KbError);
}

TEST_CASE("assert is idempotent and checks references") {
  KnowledgeBase kb;
  seed_schema(kb);
  const Name g1 = n("geo_1"), g2 = n("geo_2");
  CHECK(kb.assert_fact({g1, rdf_type(), vocab::VerticalBoundingBox}));
  CHECK_FALSE(kb.assert_fact({g1, rdf_type(), vocab::VerticalBoundingBox}));
  CHECK(kb.individuals_of(vocab::Geometry) == std::vector<Name>{g1});

  CHECK_THROWS_AS(kb.assert_fact({g1, vocab::Upper, g2}), KbError);
  CHECK_THROWS_AS(kb.assert_fact({g1, rdf_type(), n("Nope")}), KbError);
  CHECK_THROWS_AS(kb.assert_fact({g1, n("noSuchProperty"), g1}), KbError);
  CHECK_THROWS_AS(kb.assert_fact({g1, vocab::hasHeight, g1}), KbError);
  CHECK_THROWS_AS(kb.assert_fact({g1, vocab::Upper, Literal::real(1)}), KbError);
  kb.add_individual(g2);
  CHECK(kb.assert_fact({g1, vocab::Upper, g2}));
}

TEST_CASE("queries answer over the class and property hierarchy") {
  KnowledgeBase kb;
  CHECK(kb.query({Variable{"?x"}, rdf_type(), Variable{"?c"}}).empty());

  seed_schema(kb);
  kb.declare_class(n("Mast"), {vocab::FacilityElement});
  const Name m = n("m1"), g = n("geo_2"), h = n("geo_3");
  kb.assert_fact({m, rdf_type(), n("Mast")});
  kb.assert_fact({g, rdf_type(), vocab::Geometry});
  kb.assert_fact({h, rdf_type(), vocab::Geometry});
  kb.assert_fact({h, vocab::Upper, g});

  auto found = kb.query({Variable{"?x"}, rdf_type(), vocab::DomainConcept});
  REQUIRE(found.size() == 1);
  CHECK(std::get<Name>(found[0].at("?x")) == m);

  auto above = kb.query({Variable{"?x"}, vocab::Upper, g});
  REQUIRE(above.size() == 1);
  CHECK(std::get<Name>(above[0].at("?x")) == h);

  // Upper is a topologic relation.
  CHECK(kb.query({h, vocab::hasTopologicRelation, Variable{"?y"}}).size() == 1);
  // Same variable twice must bind consistently.
  CHECK(kb.query({Variable{"?x"}, vocab::Upper, Variable{"?x"}}).empty());
  // The dump holds only what was asserted.
  CHECK(kb.fact_count() == 4);
}

TEST_CASE("dump is sorted and newline terminated") {
  KnowledgeBase kb;
  CHECK(kb.dump().empty());
  seed_schema(kb);
  kb.assert_fact({n("b"), rdf_type(), vocab::Geometry});
  kb.assert_fact({n("a"), rdf_type(), vocab::Geometry});
  kb.assert_fact({n("a"), vocab::hasHeight, Literal::real(1.25)});
  CHECK(kb.dump() ==
        "dbb:a\tdbb:hasHeight\t\"1.250000\"^^real\n"
        "dbb:a\trdf:type\tdbb:Geometry\n"
        "dbb:b\trdf:type\tdbb:Geometry\n");
}

TEST_CASE("copies keep working indexes") {
  KnowledgeBase a;
  seed_schema(a);
  a.assert_fact({n("g"), rdf_type(), vocab::Geometry});
  KnowledgeBase b = a;
  a.reset_facts();
  CHECK(b.individuals_of(vocab::Geometry) == std::vector<Name>{n("g")});
  b.assert_fact({n("g"), vocab::hasHeight, Literal::real(2)});
  CHECK(b.data_value(n("g"), vocab::hasHeight)->as_real() == 2.0);
  CHECK(a.fact_count() == 0);
}

}
