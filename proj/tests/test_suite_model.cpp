#include <gtest/gtest.h>

#include <json.hpp>

#include "syngauntlet/error.hpp"
#include "syngauntlet/suite.hpp"
#include "syngauntlet/utf8.hpp"
#include "support/test_util.hpp"

using namespace syngauntlet;
using syngauntlet::testing::small_suite;

namespace {

std::vector<ValidationCode> codes(const TestSuite& s) {
  std::vector<ValidationCode> out;
  for (const auto& e : validate_suite(s).errors) out.push_back(e.code);
  return out;
}

DocumentError::Kind load_error_kind(const std::string& doc) {
  try {
    load_suite(doc);
  } catch (const DocumentError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "document loaded: " << doc;
  return DocumentError::Kind::MalformedDocument;
}

}  // namespace

TEST(Render, JoinsRegionsWithSingleSpaces) {
  const RenderedSentence r = render_sentence({{"The girls", "run", "fast."}});
  EXPECT_EQ(r.text, "The girls run fast.");
  ASSERT_EQ(r.spans.size(), 3u);
  EXPECT_EQ(r.spans[0], (CharSpan{0, 9}));
  EXPECT_EQ(r.spans[1], (CharSpan{10, 13}));
  EXPECT_EQ(r.spans[2], (CharSpan{14, 19}));
}

TEST(Render, GapRegionGetsEmptySpanAtJoinPoint) {
  const RenderedSentence r = render_sentence({{"Yo sé lo que tu amigo tiró", "", "al suelo."}});
  EXPECT_EQ(r.text, "Yo sé lo que tu amigo tiró al suelo.");
  EXPECT_EQ(r.spans[1], (CharSpan{27, 27}));
  EXPECT_EQ(r.spans[2], (CharSpan{27, 36}));
}

TEST(Render, LeadingAndTrailingGaps) {
  const RenderedSentence lead = render_sentence({{"", "Ella miraba", "los resultados."}});
  EXPECT_EQ(lead.text, "Ella miraba los resultados.");
  EXPECT_EQ(lead.spans[0], (CharSpan{0, 0}));
  const RenderedSentence trail = render_sentence({{"Ella", "miraba.", ""}});
  EXPECT_EQ(trail.spans[2], (CharSpan{12, 12}));
}

TEST(Render, AllEmptyThrows) { EXPECT_THROW(render_sentence({{"", ""}}), EmptySentenceError); }

TEST(Render, SpanLengthsAddUpWithJoinSpaces) {
  const RegionedSentence s{{"Mientras", "", "ella leía,", "sus manuscritos", "", "se volaron."}};
  const RenderedSentence r = render_sentence(s);
  std::size_t total = 0, non_empty = 0;
  for (std::size_t k = 0; k < s.regions.size(); ++k) {
    total += r.spans[k].size();
    non_empty += s.regions[k].empty() ? 0 : 1;
  }
  EXPECT_EQ(total + (non_empty - 1), utf8::length(r.text));
}

TEST(Render, CountsCharactersNotBytes) {
  const RenderedSentence r = render_sentence({{"Tú", "cocinas"}});
  EXPECT_EQ(r.spans[0], (CharSpan{0, 2}));
  EXPECT_EQ(r.spans[1], (CharSpan{3, 10}));
}

TEST(Circuits, IdsRoundTrip) {
  for (Circuit c : kAllCircuits) EXPECT_EQ(parse_circuit(circuit_id(c)), c);
  EXPECT_EQ(circuit_id(Circuit::CenterEmbedding), "center_embedding");
  EXPECT_EQ(circuit_display_name(Circuit::GardenPathEffects), "Garden Path Effects");
  EXPECT_FALSE(parse_circuit("mvrr"));
}

TEST(Document, RoundTrip) {
  TestSuite s = small_suite();
  s.has_modifier = true;
  s.modifier_pair_id = "pair";
  s.items[1].sentences["match"].regions[2] = "";
  EXPECT_EQ(load_suite(serialize_suite(s)), s);
}

TEST(Document, ErrorKinds) {
  const std::string good = serialize_suite(small_suite(1));
  EXPECT_NO_THROW(load_suite(good));
  EXPECT_EQ(load_error_kind("{"), DocumentError::Kind::MalformedDocument);

  auto edit = [&](auto fn) {
    nlohmann::json doc = nlohmann::json::parse(good);
    fn(doc);
    return doc.dump();
  };
  EXPECT_EQ(load_error_kind(edit([](auto& d) { d.erase("predictions"); })), DocumentError::Kind::MissingField);
  EXPECT_EQ(load_error_kind(edit([](auto& d) { d["has_modifier"] = "yes"; })), DocumentError::Kind::TypeMismatch);
  EXPECT_EQ(load_error_kind(edit([](auto& d) { d["author"] = "x"; })), DocumentError::Kind::UnknownField);
  EXPECT_EQ(load_error_kind(edit([](auto& d) { d["circuit"] = "mvrr"; })), DocumentError::Kind::InvalidValue);
}

TEST(Validate, CleanSuite) { EXPECT_TRUE(validate_suite(small_suite()).ok()); }

TEST(Validate, MissingConditionNamesItem) {
  TestSuite s = small_suite(3);
  s.items[2].sentences.erase("mismatch");
  const auto report = validate_suite(s);
  ASSERT_EQ(report.errors.size(), 1u);
  EXPECT_EQ(report.errors[0].code, ValidationCode::MissingCondition);
  EXPECT_EQ(report.errors[0].item_index, 3);
}

TEST(Validate, DanglingRegion) {
  TestSuite s = small_suite();
  s.region_names = {"a", "b", "c", "d", "e"};
  for (auto& item : s.items)
    for (auto& [_, sent] : item.sentences) sent.regions.resize(5, "x");
  s.predictions = {"(9;match) < (9;mismatch)"};
  EXPECT_EQ(codes(s), (std::vector<ValidationCode>{ValidationCode::DanglingRegionRef, ValidationCode::DanglingRegionRef}));
}

TEST(Validate, OtherCodes) {
  TestSuite s = small_suite();
  s.predictions = {"(1;nope) < (1;match)"};
  EXPECT_EQ(codes(s), std::vector<ValidationCode>{ValidationCode::UnknownConditionRef});

  s = small_suite();
  s.predictions = {"(2;a < (2;b)"};
  EXPECT_EQ(codes(s), std::vector<ValidationCode>{ValidationCode::UnparseablePrediction});

  s = small_suite();
  s.items[0].sentences["extra"] = {{"a", "b", "c"}};
  EXPECT_EQ(codes(s), std::vector<ValidationCode>{ValidationCode::ExtraCondition});

  s = small_suite();
  s.items[0].sentences["match"].regions[1] = "runs\nfast";
  EXPECT_EQ(codes(s), std::vector<ValidationCode>{ValidationCode::LineBreakInRegion});

  s = small_suite();
  s.items[2].index = 7;
  EXPECT_EQ(codes(s), std::vector<ValidationCode>{ValidationCode::NonContiguousItemIndex});

  s = small_suite();
  s.items.clear();
  EXPECT_EQ(codes(s), std::vector<ValidationCode>{ValidationCode::NoItems});

  s = small_suite();
  s.region_names = {"a", "a", "b"};
  EXPECT_EQ(codes(s), std::vector<ValidationCode>{ValidationCode::DuplicateRegionName});
}

TEST(Validate, Pure) {
  TestSuite s = small_suite();
  s.items[0].sentences.erase("match");
  EXPECT_EQ(validate_suite(s), validate_suite(s));
}
