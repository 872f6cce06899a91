#include <doctest.h>

#include "errors.hpp"
#include "kop.hpp"

using namespace glyphmcda;

TEST_CASE("AKOP sets follow the data type") {
    CHECK(akops_for(DataType::nominal) == std::set<Kop>{Kop::associative, Kop::selective});
    CHECK(akops_for(DataType::ordinal) == std::set<Kop>{Kop::associative, Kop::selective, Kop::ordered});
    const std::set<Kop> all(kAllKops.begin(), kAllKops.end());
    CHECK(akops_for(DataType::interval) == all);
    CHECK(akops_for(DataType::ratio) == all);
    CHECK_THROWS_AS(akops_for(DataType::directional), CriterionInputError);
}

TEST_CASE("built-in table cells match the printed rating tables") {
    CHECK(kop_rating(ChannelKind::shape, Kop::associative) == KopRating::yes);
    CHECK(kop_rating(ChannelKind::shape, Kop::selective) == KopRating::can_be);
    CHECK(kop_rating(ChannelKind::brightness, Kop::associative) == KopRating::no);
    CHECK(kop_rating(ChannelKind::halos, Kop::quantitative) == KopRating::yes);
    CHECK(kop_rating(ChannelKind::size, Kop::selective) == KopRating::limited);
    CHECK(kop_rating(ChannelKind::shadow, Kop::ordered) == KopRating::maybe);
    CHECK(kop_rating(ChannelKind::number, Kop::quantitative) == KopRating::yes);
    CHECK_THROWS_AS(kop_rating(ChannelKind::custom, Kop::ordered), CriterionInputError);
}

TEST_CASE("built-in table covers every non-custom channel kind") {
    const auto& kb = KnowledgeBase::builtin();
    CHECK(kb.version() >= 1);
    for (int k = 0; k <= static_cast<int>(ChannelKind::isotype); ++k) {
        const auto kind = static_cast<ChannelKind>(k);
        CAPTURE(to_token(kind));
        CHECK(kb.contains(kind));
        CHECK(kb.row(kind).size() == 4);
    }
    CHECK_FALSE(kb.contains(ChannelKind::custom));
}

TEST_CASE("suitability mapping and overrides") {
    CHECK(suitability(KopRating::yes) == Suitability::appropriate);
    CHECK(suitability(KopRating::no) == Suitability::inappropriate);
    CHECK(suitability(KopRating::limited) == Suitability::usable);
    CHECK(suitability(KopRating::maybe) == Suitability::usable);
    CHECK(suitability(KopRating::can_be, Suitability::inappropriate) == Suitability::inappropriate);
    CHECK(suitability(KopRating::can_be, Suitability::appropriate) == Suitability::appropriate);
    CHECK(suitability(KopRating::yes, Suitability::inappropriate) == Suitability::appropriate);
    CHECK(suitability_from_token(to_token(Suitability::usable)) == Suitability::usable);
}

TEST_CASE("table parser reports the offending line") {
    CHECK_THROWS_AS(KnowledgeBase::parse("size yes yes yes yes\n"), ValidationError);
    CHECK_THROWS_AS(KnowledgeBase::parse("version 1\nsize yes yes yes\n"), ValidationError);
    CHECK_THROWS_AS(KnowledgeBase::parse("version 1\nsize yes yes yes often\n"), ValidationError);
    CHECK_THROWS_AS(KnowledgeBase::parse("version 1\nwobble yes yes yes yes\n"), ValidationError);
    try {
        KnowledgeBase::parse("version 1\n# comment\nsize yes yes yes often\n");
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("override tables replace whole rows") {
    const auto custom = KnowledgeBase::parse("version 7\nshape no no yes yes\n");
    const auto merged = KnowledgeBase::builtin().with_overrides(custom);
    CHECK(merged.rating(ChannelKind::shape, Kop::associative) == KopRating::no);
    CHECK(merged.rating(ChannelKind::shape, Kop::quantitative) == KopRating::yes);
    CHECK(merged.rating(ChannelKind::size, Kop::ordered) == KopRating::yes);
}
