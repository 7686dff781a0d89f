#include <doctest.h>

#include "offsetforge/csv.hpp"
#include "offsetforge/sha256.hpp"

using namespace offsetforge;

TEST_SUITE("sha256") {
    // FIPS 180-4 / NIST CAVP vectors.
    TEST_CASE("standard vectors") {
        CHECK(sha256_hex("") ==
              "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
        CHECK(sha256_hex("abc") ==
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
              "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    }

    TEST_CASE("million a") {
        std::string m(1000000, 'a');
        CHECK(sha256_hex(m) ==
              "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
    }

    TEST_CASE("block boundary lengths") {
        // 55/56/64 bytes straddle the padding split.
        CHECK(sha256_hex(std::string(55, 'x')).size() == 64);
        CHECK(sha256_hex(std::string(56, 'x')) != sha256_hex(std::string(57, 'x')));
        CHECK(sha256_hex(std::string(64, 'x')) != sha256_hex(std::string(65, 'x')));
    }
}

TEST_SUITE("csv") {
    TEST_CASE("escape quotes only when needed") {
        CHECK(csv::escape("plain") == "plain");
        CHECK(csv::escape("with space") == "with space");
        CHECK(csv::escape("h3H,2H2,1H3") == "\"h3H,2H2,1H3\"");
        CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
        CHECK(csv::escape("line\nbreak") == "\"line\nbreak\"");
        CHECK(csv::escape("") == "");
    }

    TEST_CASE("split row round trips escaped fields") {
        std::vector<std::string> fields;
        std::string err;
        REQUIRE(csv::split_row("a,b,c", fields, err));
        CHECK(fields == std::vector<std::string>{"a", "b", "c"});

        REQUIRE(csv::split_row("\"h3H,2H2,1H3\",file.sdf,42", fields, err));
        CHECK(fields == std::vector<std::string>{"h3H,2H2,1H3", "file.sdf", "42"});

        REQUIRE(csv::split_row("\"say \"\"hi\"\"\",x", fields, err));
        CHECK(fields == std::vector<std::string>{"say \"hi\"", "x"});

        REQUIRE(csv::split_row("", fields, err));
        CHECK(fields == std::vector<std::string>{""});

        REQUIRE(csv::split_row("a,", fields, err));
        CHECK(fields == std::vector<std::string>{"a", ""});
    }

    TEST_CASE("split row rejects malformed quoting") {
        std::vector<std::string> fields;
        std::string err;
        CHECK_FALSE(csv::split_row("\"unterminated", fields, err));
        CHECK_FALSE(csv::split_row("\"a\"b,c", fields, err));
        CHECK_FALSE(csv::split_row("a\"b,c", fields, err));
    }

    TEST_CASE("escape then split is identity") {
        std::vector<std::string> nasty = {"plain", "a,b", "\"", "\"\"", ",", "a\"b,c\"d",
                                          "InChI=1S/C3H8O/c1-2-3-4/h4H,2-3H2,1H3"};
        for (const auto& field : nasty) {
            std::vector<std::string> fields;
            std::string err;
            REQUIRE(csv::split_row(csv::escape(field) + ",z", fields, err));
            REQUIRE(fields.size() == 2);
            CHECK(fields[0] == field);
        }
    }
}
