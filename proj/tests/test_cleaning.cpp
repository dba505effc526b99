#include <doctest.h>

#include <random>

#include "curate/cleaning.hpp"
#include "curate/error.hpp"
#include "helpers.hpp"

using namespace curate;
using testutil::TempDir;

namespace {

Document doc(std::string text) { return Document{1, std::move(text), "scientific_papers", {}}; }

std::string clean_text(const std::string& text) { return clean_document(doc(text)).first.text; }

// Independent balance scanner used as the oracle for the LaTeX repair rule:
// per paragraph, unescaped $ count must be even and every \begin{X} must have
// a matching \end{X} after it.
bool paragraph_delimiters_balanced(const std::string& text) {
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t brk = text.find("\n\n", pos);
        std::string para = text.substr(pos, brk == std::string::npos ? std::string::npos : brk - pos);
        size_t dollars = 0;
        for (size_t i = 0; i < para.size(); ++i)
            if (para[i] == '$' && (i == 0 || para[i - 1] != '\\')) ++dollars;
        if (dollars % 2 != 0) return false;
        std::vector<std::string> stack;
        for (size_t i = 0; (i = para.find("\\begin{", i)) != std::string::npos;) {
            size_t close = para.find('}', i + 7);
            if (close == std::string::npos) break;
            stack.push_back(para.substr(i + 7, close - i - 7));
            i = close;
        }
        for (size_t i = 0; (i = para.find("\\end{", i)) != std::string::npos;) {
            size_t close = para.find('}', i + 5);
            if (close == std::string::npos) break;
            std::string env = para.substr(i + 5, close - i - 5);
            if (!stack.empty() && stack.back() == env) stack.pop_back();
            i = close;
        }
        if (!stack.empty()) return false;
        if (brk == std::string::npos) break;
        pos = brk + 2;
    }
    return true;
}

}  // namespace

TEST_CASE("URL and DOI removal") {
    CHECK(clean_text("see https://example.org/x?q=1 for details") == "see for details");
    CHECK(clean_text("cited as 10.1234/abc.def-5 here") == "cited as here");
    CHECK(clean_text("visit http://a.b then stop") == "visit then stop");
    // bare version numbers are not DOIs
    CHECK(clean_text("version 10.2 of the code") == "version 10.2 of the code");
}

TEST_CASE("bracketed numeric citations are removed, other brackets kept") {
    CHECK(clean_text("as shown [1] and [2, 3] and [4,5, 6] end") == "as shown and and end");
    CHECK(clean_text("array[i] stays [see Fig 2] stays") == "array[i] stays [see Fig 2] stays");
}

TEST_CASE("line-break hyphenation is rejoined, including chained breaks") {
    CHECK(clean_text("the ther-\nmal limit") == "the thermal limit");
    CHECK(clean_text("a-\nb-\nc") == "abc");
    // only letter-hyphen-letter across the break counts as a broken word
    CHECK(clean_text("TI-\n84 device") == "TI- 84 device");
    CHECK(clean_text("5-\nfold rise") == "5- fold rise");
}

TEST_CASE("whitespace collapse: runs with 2+ newlines become paragraph breaks") {
    CHECK(clean_text("a  b\tc") == "a b c");
    CHECK(clean_text("a\nb") == "a b");
    CHECK(clean_text("para one\n\n  para two") == "para one\n\npara two");
    CHECK(clean_text("para one \n \n para two") == "para one\n\npara two");
    CHECK(clean_text("  padded  ") == "padded");
}

TEST_CASE("count_unescaped_dollars") {
    CHECK(count_unescaped_dollars("") == 0);
    CHECK(count_unescaped_dollars("$x$") == 2);
    CHECK(count_unescaped_dollars("cost \\$5 and $x$") == 2);
    CHECK(count_unescaped_dollars("$") == 1);
}

TEST_CASE("latex repair closes odd dollars and unmatched environments per paragraph") {
    auto [fixed1, n1] = repair_latex("we have $x + y");
    CHECK(fixed1 == "we have $x + y$");
    CHECK(n1 == 1);

    auto [fixed2, n2] = repair_latex("\\begin{align}x = y");
    CHECK(fixed2 == "\\begin{align}x = y\\end{align}");
    CHECK(n2 == 1);

    auto [fixed3, n3] = repair_latex("\\begin{a}\\begin{b}text");
    CHECK(fixed3 == "\\begin{a}\\begin{b}text\\end{b}\\end{a}");
    CHECK(n3 == 2);

    // balanced input untouched
    auto [fixed4, n4] = repair_latex("$x$ and \\begin{eq}y\\end{eq}");
    CHECK(fixed4 == "$x$ and \\begin{eq}y\\end{eq}");
    CHECK(n4 == 0);

    // breaks are paragraph-scoped: each paragraph repaired on its own
    auto [fixed5, n5] = repair_latex("open $x\n\nclosed $y$ fine");
    CHECK(fixed5 == "open $x$\n\nclosed $y$ fine");
    CHECK(n5 == 1);

    // escaped dollars do not count
    auto [fixed6, n6] = repair_latex("price \\$10");
    CHECK(fixed6 == "price \\$10");
    CHECK(n6 == 0);
}

TEST_CASE("cleaned output always has balanced per-paragraph delimiters") {
    std::mt19937_64 rng(77);
    const char* pieces[] = {"$x",     "$",          "\\begin{eq}", "\\end{eq}", "word",
                            "\\$5",   "y = z$",     "\n\n",        "text.",     "$a+b$",
                            "[12]",   "th-\nermal", "https://u.v", " more"};
    for (int iter = 0; iter < 200; ++iter) {
        std::string text;
        size_t n = 3 + rng() % 12;
        for (size_t i = 0; i < n; ++i) {
            text += pieces[rng() % 14];
            text += ' ';
        }
        std::string cleaned = clean_text(text);
        CAPTURE(text);
        CAPTURE(cleaned);
        CHECK(paragraph_delimiters_balanced(cleaned));
    }
}

TEST_CASE("NFC runs before the other rules") {
    // e + combining acute composes to é
    CHECK(clean_text("caf" "e\xcc\x81" " open") == "caf\xc3\xa9 open");
}

TEST_CASE("cleaning is idempotent") {
    std::vector<std::string> inputs = {
        "see [1] at https://x.y and $a+b and ther-\nmal limits\n\n\\begin{eq}x",
        "plain text stays plain",
        "a  b\n\nc\td",
        "$x$ $y",
    };
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) inputs.push_back(testutil::random_text(30, rng()));
    for (const auto& in : inputs) {
        std::string once = clean_text(in);
        CAPTURE(in);
        CHECK(clean_text(once) == once);
    }
}

TEST_CASE("cleaning report accounting") {
    auto [cleaned, report] = clean_document(doc("see [1] and [2] at https://a.b now $x"));
    CHECK(report.rules_fired.at("citation") == 2);
    CHECK(report.rules_fired.at("url") == 1);
    CHECK(report.latex_fixes == 1);
    CHECK(report.chars_inserted == 1);
    // removed = inserted + (len before - len after), all relative to post-NFC text
    std::string post_nfc = "see [1] and [2] at https://a.b now $x";
    CHECK(report.chars_removed ==
          static_cast<int64_t>(post_nfc.size()) - static_cast<int64_t>(cleaned.text.size()) + 1);
    CHECK(cleaned.text == "see and at now $x$");
}

TEST_CASE("clean stage drops empty and short documents with named reasons") {
    TempDir dir("clean_stage");
    auto in = dir.file("in.jsonl");
    auto out = dir.file("out.jsonl");
    std::string long_text(300, 'x');
    long_text = "Start " + long_text + " end.";
    testutil::write_corpus(in, {
                                   {1, "https://only.a.url", "s", {}},  // empty after cleaning
                                   {2, "short text", "s", {}},          // under min_chars
                                   {3, long_text, "s", {}},
                               });
    auto m = clean_stage(in, out, 200);
    CHECK(m.docs_in == 3);
    CHECK(m.docs_out == 1);
    CHECK(m.docs_dropped == 2);
    CHECK(m.drop_reasons.at("empty_after_clean") == 1);
    CHECK(m.drop_reasons.at("too_short") == 1);
    auto docs = testutil::read_corpus(out);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].id == 3);
}
