#include <doctest.h>

#include <random>

#include "curate/error.hpp"
#include "helpers.hpp"

using namespace curate;
using testutil::TempDir;

TEST_CASE("document JSONL line has fixed key order") {
    Document d{7, "hello \"world\"\nline2", "pile_general", {{"a", "1"}, {"b", "2"}}};
    std::string line = document_to_json_line(d);
    CHECK(line ==
          R"({"id":7,"source":"pile_general","text":"hello \"world\"\nline2","meta":{"a":"1","b":"2"}})");
}

TEST_CASE("write then read round-trips randomized documents exactly") {
    TempDir dir("corpus_rt");
    std::mt19937_64 rng(11);
    std::vector<Document> docs;
    for (uint64_t i = 0; i < 200; ++i) {
        Document d;
        d.id = i * 3 + 1;
        d.source = (i % 2) ? source::kScientificPapers : source::kPileRelevant;
        d.text = testutil::random_text(1 + rng() % 40, rng());
        if (i % 5 == 0) d.text += "\nnewline\tand \"quotes\" and \xc3\xa9";
        if (i % 7 == 0) d.meta = {{"origin", "t" + std::to_string(i)}};
        docs.push_back(std::move(d));
    }
    auto path = dir.file("docs.jsonl");
    testutil::write_corpus(path, docs);
    CHECK(testutil::read_corpus(path) == docs);
}

TEST_CASE("reader is streaming: yields records one at a time in file order") {
    TempDir dir("corpus_stream");
    auto path = dir.file("docs.jsonl");
    testutil::write_corpus(path, {{1, "a", "s", {}}, {2, "b", "s", {}}, {3, "c", "s", {}}});
    DocumentReader r(path);
    CHECK(r.next()->id == 1);
    CHECK(r.next()->id == 2);
    CHECK(r.next()->id == 3);
    CHECK_FALSE(r.next().has_value());
    CHECK_FALSE(r.next().has_value());  // stable at EOF
}

TEST_CASE("reader skips blank lines") {
    TempDir dir("corpus_blank");
    auto path = dir.file("docs.jsonl");
    testutil::write_file(path, "\n" + document_to_json_line({5, "x", "s", {}}) + "\n\n");
    auto docs = testutil::read_corpus(path);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].id == 5);
}

TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(DocumentReader("/nonexistent/nope.jsonl"), ConfigError);
}

TEST_CASE("malformed line errors carry line number and byte offset") {
    TempDir dir("corpus_bad");
    auto path = dir.file("docs.jsonl");
    std::string first = document_to_json_line({1, "ok", "s", {}});
    testutil::write_file(path, first + "\nnot json\n");
    DocumentReader r(path);
    CHECK(r.next().has_value());
    try {
        r.next();
        FAIL("expected StageError");
    } catch (const StageError& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("byte offset " + std::to_string(first.size() + 1)) != std::string::npos);
    }
}

TEST_CASE("missing required fields are named") {
    TempDir dir("corpus_missing");
    auto path = dir.file("docs.jsonl");
    testutil::write_file(path, R"({"id":1,"source":"s"})" "\n");
    DocumentReader r(path);
    CHECK_THROWS_WITH_AS(r.next(), doctest::Contains("missing field text"), StageError);
}

TEST_CASE("duplicate ids name both lines") {
    TempDir dir("corpus_dup");
    auto path = dir.file("docs.jsonl");
    testutil::write_file(path, document_to_json_line({9, "a", "s", {}}) + "\n" +
                                   document_to_json_line({9, "b", "s", {}}) + "\n");
    DocumentReader r(path);
    r.next();
    try {
        r.next();
        FAIL("expected StageError");
    } catch (const StageError& e) {
        std::string msg = e.what();
        CHECK(msg.find("duplicate id 9") != std::string::npos);
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("line 1") != std::string::npos);
    }
}

TEST_CASE("manifest sidecar round-trips") {
    TempDir dir("manifest");
    auto out = dir.file("stage.jsonl");
    RunManifest m;
    m.stage = "clean";
    m.docs_in = 10;
    m.docs_out = 8;
    m.drop("too_short");
    m.drop("too_short");
    m.seed = 42;
    m.config_digest = "abc123";
    m.wall_time_ms = 17;
    write_manifest(out, m);
    auto back = read_manifest(out);
    CHECK(back.stage == "clean");
    CHECK(back.docs_in == 10);
    CHECK(back.docs_out == 8);
    CHECK(back.docs_dropped == 2);
    CHECK(back.drop_reasons.at("too_short") == 2);
    CHECK(back.seed == 42);
    CHECK(back.config_digest == "abc123");
}
