#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "talentrank/common/binary.hpp"
#include "talentrank/common/csv.hpp"
#include "talentrank/common/date.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/labels.hpp"
#include "talentrank/common/random.hpp"
#include "talentrank/common/text.hpp"

#include "oracles.hpp"

namespace talentrank {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

TEST(Fnv, PublishedVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(Bytes, PrimitivesRoundTrip) {
  ByteWriter w;
  w.u8(7);
  w.u16(0xBEEF);
  w.u32(0xDEADBEEF);
  w.u64(0x0123456789ABCDEFULL);
  w.i32(-5);
  w.i64(-9);
  w.f64(-0.0);
  w.f64(std::numeric_limits<double>::denorm_min());
  w.f64(0.1);
  w.boolean(true);
  w.str("h\xC3\xA9llo");
  ByteReader r(w.bytes());
  EXPECT_EQ(r.u8(), 7);
  EXPECT_EQ(r.u16(), 0xBEEF);
  EXPECT_EQ(r.u32(), 0xDEADBEEFu);
  EXPECT_EQ(r.u64(), 0x0123456789ABCDEFULL);
  EXPECT_EQ(r.i32(), -5);
  EXPECT_EQ(r.i64(), -9);
  double z = r.f64();
  EXPECT_TRUE(z == 0.0 && std::signbit(z));
  EXPECT_EQ(r.f64(), std::numeric_limits<double>::denorm_min());
  EXPECT_EQ(r.f64(), 0.1);
  EXPECT_TRUE(r.boolean());
  EXPECT_EQ(r.str(), "h\xC3\xA9llo");
  EXPECT_TRUE(r.at_end());
  EXPECT_NO_THROW(r.expect_end());
}

TEST(Bytes, LittleEndianLayout) {
  ByteWriter w;
  w.u32(0x04030201);
  EXPECT_EQ(w.bytes(), std::string("\x01\x02\x03\x04", 4));
}

TEST(Bytes, ShortReadReportsAbsoluteOffset) {
  ByteWriter w;
  w.u16(1);
  ByteReader r(w.bytes(), 100);
  r.u8();
  try {
    r.u32();
    FAIL();
  } catch (const IntegrityError& e) {
    EXPECT_EQ(e.offset(), 101u);
  }
}

TEST(Bytes, CountGuardsAgainstRemainingBytes) {
  ByteWriter w;
  w.u64(1000000);
  w.u8(0);
  ByteReader r(w.bytes());
  EXPECT_EQ(code_of([&] { r.count(8); }), ErrorCode::kIntegrity);
}

TEST(Seal, RoundTripAndLayout) {
  std::string payload = "payload bytes";
  auto sealed = seal(ArtifactKind::kJobProfile, payload);
  ASSERT_EQ(sealed.size(), kPayloadOffset + payload.size() + 8);
  EXPECT_EQ(sealed.substr(0, 4), "TRNK");
  EXPECT_EQ(unseal(ArtifactKind::kJobProfile, sealed), payload);
}

TEST(Seal, RejectsEveryCorruption) {
  auto sealed = seal(ArtifactKind::kCandidate, "abcdefgh");
  EXPECT_EQ(code_of([&] { unseal(ArtifactKind::kJobProfile, sealed); }), ErrorCode::kIntegrity);

  auto bad_magic = sealed;
  bad_magic[0] = 'X';
  EXPECT_EQ(code_of([&] { unseal(ArtifactKind::kCandidate, bad_magic); }), ErrorCode::kIntegrity);

  for (std::size_t cut = 0; cut < sealed.size(); ++cut) {
    auto truncated = sealed.substr(0, cut);
    EXPECT_EQ(code_of([&] { unseal(ArtifactKind::kCandidate, truncated); }),
              ErrorCode::kIntegrity)
        << "cut at " << cut;
  }

  for (std::size_t i = kPayloadOffset; i < sealed.size(); ++i) {
    auto flipped = sealed;
    flipped[i] = static_cast<char>(flipped[i] ^ 0x20);
    EXPECT_EQ(code_of([&] { unseal(ArtifactKind::kCandidate, flipped); }), ErrorCode::kIntegrity)
        << "flip at " << i;
  }

  EXPECT_EQ(code_of([&] { unseal(ArtifactKind::kCandidate, sealed + "x"); }),
            ErrorCode::kIntegrity);
}

TEST(Seal, FutureVersionRejectedBeforePayload) {
  auto sealed = seal(ArtifactKind::kCandidate, "abc");
  sealed[4] = 2;
  // Payload garbage must not matter: the version check comes first.
  sealed.resize(kPayloadOffset);
  EXPECT_EQ(code_of([&] { unseal(ArtifactKind::kCandidate, sealed); }), ErrorCode::kVersion);
}

TEST(Files, AtomicWriteLeavesNoTemporaries) {
  oracle::TempDir dir("files");
  auto path = dir.path / "a.bin";
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  EXPECT_EQ(read_file(path), "two");
  std::size_t n = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path)) ++n;
  EXPECT_EQ(n, 1u);
  EXPECT_EQ(code_of([&] { read_file(dir.path / "missing"); }), ErrorCode::kIo);
}

TEST(Csv, ParsesQuotedFields) {
  std::vector<std::string> f;
  ASSERT_TRUE(csv::parse_line(R"(a,"b,c","say ""hi""",,)", f));
  EXPECT_EQ(f, (std::vector<std::string>{"a", "b,c", "say \"hi\"", "", ""}));
  EXPECT_FALSE(csv::parse_line(R"(a,"open)", f));
  EXPECT_FALSE(csv::parse_line(R"(a,b"c)", f));
}

TEST(Csv, EscapeRoundTrips) {
  std::vector<std::string> values = {"plain", "with,comma", "with \"quote\"", "", " lead"};
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += csv::escape(values[i]);
  }
  std::vector<std::string> back;
  ASSERT_TRUE(csv::parse_line(line, back));
  EXPECT_EQ(back, values);
}

TEST(Csv, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(csv::format_double(80.0), "80");
  EXPECT_EQ(csv::format_double(0.1), "0.1");
  EXPECT_EQ(csv::format_double(-2.5), "-2.5");
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double v = u(gen);
    EXPECT_EQ(std::stod(csv::format_double(v)), v);
  }
}

// Days-from-civil by counting whole years and months, no closed form.
std::int64_t count_days(const Date& d) {
  std::int64_t days = 0;
  if (d.year >= 1970) {
    for (int y = 1970; y < d.year; ++y) days += is_leap_year(y) ? 366 : 365;
  } else {
    for (int y = d.year; y < 1970; ++y) days -= is_leap_year(y) ? 366 : 365;
  }
  for (int m = 1; m < d.month; ++m) days += days_in_month(d.year, m);
  return days + d.day - 1;
}

TEST(Date, CalendarFacts) {
  EXPECT_TRUE(is_leap_year(2000));
  EXPECT_FALSE(is_leap_year(1900));
  EXPECT_TRUE(is_leap_year(2016));
  EXPECT_FALSE(is_leap_year(2019));
  EXPECT_EQ(days_in_month(2016, 2), 29);
  EXPECT_EQ(days_in_month(2019, 2), 28);
  EXPECT_EQ(days_in_month(2019, 4), 30);
  EXPECT_FALSE(is_valid({2019, 2, 29}));
  EXPECT_FALSE(is_valid({2019, 13, 1}));
  EXPECT_TRUE(is_valid({2016, 2, 29}));
  EXPECT_EQ(to_days({1970, 1, 1}), 0);
  EXPECT_EQ(to_days({2000, 3, 1}), 11017);
}

TEST(Date, ToDaysMatchesCounting) {
  for (int y = 1900; y <= 2100; y += 7) {
    for (int m = 1; m <= 12; ++m) {
      Date d{y, m, days_in_month(y, m)};
      EXPECT_EQ(to_days(d), count_days(d)) << format_iso(d);
    }
  }
}

TEST(Date, Formatting) {
  Date d{2015, 6, 1};
  EXPECT_EQ(format_us(d), "06/01/2015");
  EXPECT_EQ(format_iso(d), "2015-06-01");
  EXPECT_EQ(parse_iso("2015-06-01"), d);
  EXPECT_FALSE(parse_iso("2015-02-30"));
  EXPECT_FALSE(parse_iso("2015-6-1x"));
  EXPECT_FALSE(parse_iso(""));
}

TEST(Labels, NamesRoundTrip) {
  for (auto l : kAllSectionLabels) EXPECT_EQ(parse_section_label(to_string(l)), l);
  for (auto l : kAllDegreeLevels) EXPECT_EQ(parse_degree_level(to_string(l)), l);
  EXPECT_EQ(parse_degree_level("MASTER"), DegreeLevel::kMaster);
  EXPECT_FALSE(parse_section_label("hobbies"));
}

TEST(Text, NormalizeKeyIsIdempotent) {
  EXPECT_EQ(text::normalize_key("  St. John's  University, (NY) "), "st johns university ny");
  for (std::string s : {"A.B-C", "x  y", "Work-Experience:", "C++ / C#"}) {
    auto once = text::normalize_key(s);
    EXPECT_EQ(text::normalize_key(once), once);
  }
}

TEST(Text, EditDistance) {
  EXPECT_EQ(text::edit_distance("mastre", "master"), 2u);
  EXPECT_EQ(text::edit_distance("", "abc"), 3u);
  EXPECT_EQ(text::edit_distance("kitten", "sitting"), 3u);
}

TEST(Text, PhonesAndEmails) {
  EXPECT_TRUE(text::looks_like_email("jane.doe@example.com"));
  EXPECT_FALSE(text::looks_like_email("jane@"));
  auto runs = text::find_phone_runs("Call +1 (555) 123-4567 today");
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(std::string("Call +1 (555) 123-4567 today").substr(runs[0].first,
                                                                runs[0].second - runs[0].first),
            "+1 (555) 123-4567");
  EXPECT_TRUE(text::find_phone_runs("2004 - 2005 2006").empty());
}

TEST(Text, FeatureTokens) {
  auto t = text::feature_tokens("C++ dev, jane@x.org, 2015 and 42");
  EXPECT_EQ(t, (std::vector<std::string>{"c++", "dev", "<email>", "<year>", "and", "<num>"}));
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(r.below(7), 7u);
  }
}

}  // namespace
}  // namespace talentrank
