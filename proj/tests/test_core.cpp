#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "followgraph/csv.hpp"
#include "followgraph/digest.hpp"
#include "followgraph/errors.hpp"
#include "followgraph/parallel.hpp"
#include "followgraph/rational.hpp"
#include "followgraph/text.hpp"

using namespace followgraph;

TEST_CASE("rational arithmetic stays reduced") {
    Rational a(1, 3);
    Rational b(1, 6);
    Rational sum = a + b;
    CHECK(sum.num() == 1);
    CHECK(sum.den() == 2);
    CHECK((a * b) == Rational(1, 18));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a / b) == Rational(2, 1));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4).num() == -1);
    CHECK(Rational(2, -4).den() == 2);
}

TEST_CASE("rational ordering and conversion") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(3, 4).to_double() == doctest::Approx(0.75));
    CHECK(Rational(5, 1).str() == "5");
    CHECK(Rational(-1, 8).str() == "-1/8");
}

TEST_CASE("rational rejects zero denominators and overflow") {
    CHECK_THROWS_AS(Rational(1, 0), ModelError);
    Rational big(std::numeric_limits<std::int64_t>::max(), 1);
    CHECK_THROWS_AS(big + big, ModelError);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0, 5), ModelError);
}

TEST_CASE("long rational sums stay exact") {
    // 720720 = lcm(1..16); any sum of row weights has a denominator
    // dividing it, so everything here is exactly representable.
    Rational total;
    for (int size = 1; size <= 16; ++size)
        for (int rep = 0; rep < size; ++rep) total += Rational(1, size);
    CHECK(total == Rational(16, 1));
}

TEST_CASE("csv reader handles quoting and crlf") {
    std::istringstream in("a,b,c\r\n1,\"x,y\",\"he said \"\"hi\"\"\"\n2,,z\n");
    CsvReader reader(in, "test");
    CHECK(reader.header() == std::vector<std::string>{"a", "b", "c"});
    std::vector<std::string> row;
    REQUIRE(reader.next(row));
    CHECK(row == std::vector<std::string>{"1", "x,y", "he said \"hi\""});
    REQUIRE(reader.next(row));
    CHECK(row == std::vector<std::string>{"2", "", "z"});
    CHECK_FALSE(reader.next(row));
}

TEST_CASE("csv reader reports malformed rows with line numbers") {
    std::istringstream in("a,b\n1,2\n3\n");
    CsvReader reader(in, "test");
    std::vector<std::string> row;
    REQUIRE(reader.next(row));
    try {
        reader.next(row);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("test:3") != std::string::npos);
    }
}

TEST_CASE("csv reader rejects empty input") {
    std::istringstream in("");
    CHECK_THROWS_AS(CsvReader(in, "test"), InputError);
}

TEST_CASE("csv field quoting round-trips") {
    std::vector<std::string> fields{"plain", "with,comma", "with\"quote", "multi\nline"};
    std::string line = csv_row(fields);
    std::istringstream in("h1,h2,h3,h4\n" + line);
    CsvReader reader(in, "test");
    std::vector<std::string> row;
    REQUIRE(reader.next(row));
    CHECK(row == fields);
}

TEST_CASE("format_fixed") {
    CHECK(format_fixed(0.75) == "0.750000");
    CHECK(format_fixed(1.0 / 3.0) == "0.333333");
    CHECK(format_fixed(2, 0) == "2");
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex(std::string(1000000, 'a')) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("text helpers") {
    CHECK(text::fold("MiKe") == "mike");
    CHECK(text::first_token("  Emily Rodriguez") == "Emily");
    CHECK(text::first_token("") == "");
    CHECK(text::strip_nonalpha_edges("MIKE!!") == "MIKE");
    CHECK(text::strip_nonalpha_edges("@emily_rose") == "emily_rose");
    CHECK(text::strip_nonalpha_edges("123") == "");
    CHECK(text::alpha_words("proud mom-of-3!") ==
          std::vector<std::string>{"proud", "mom", "of"});
    CHECK(text::trim("  a b \n") == "a b");
}

TEST_CASE("block_reduce is bit-stable across thread counts") {
    std::vector<double> values(100003);
    double x = 0.5;
    for (auto& v : values) {
        x = std::fmod(x * 1.61803398875 + 0.123, 1.0);
        v = x;
    }
    auto reduce = [&](std::size_t threads) {
        return block_reduce<double>(
            values.size(), 0.0,
            [&](std::size_t b, std::size_t e) {
                double s = 0.0;
                for (std::size_t i = b; i < e; ++i) s += values[i];
                return s;
            },
            [](double a, double b) { return a + b; }, threads);
    };
    const double once = reduce(1);
    CHECK(reduce(2) == once);
    CHECK(reduce(4) == once);
    CHECK(reduce(7) == once);
}
