#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "cohort_audit/tfidf.hpp"
#include "support/helpers.hpp"

using namespace cohort_audit;

namespace {

TokenStream stream_of(std::vector<std::string> tokens) {
    TokenStream s;
    s.tokens = std::move(tokens);
    return s;
}

}  // namespace

TEST_CASE("fit_tfidf follows the smoothed idf formula") {
    SECTION("two identical single-token docs") {
        const std::vector<TokenStream> corpus{stream_of({"agua"}), stream_of({"agua"})};
        const TfIdfModel model = fit_tfidf(corpus);
        REQUIRE(model.vocabulary.size() == 1);
        // idf = ln((1+2)/(1+2)) + 1 = 1
        CHECK(model.idf[0] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("df extremes") {
        std::vector<TokenStream> corpus;
        for (int i = 0; i < 8; ++i) {
            std::vector<std::string> toks{"comun"};
            if (i == 0) toks.push_back("raro");
            corpus.push_back(stream_of(toks));
        }
        const TfIdfModel model = fit_tfidf(corpus);
        const double idf_common = model.idf[model.vocabulary.at("comun")];
        const double idf_rare = model.idf[model.vocabulary.at("raro")];
        CHECK(idf_common == Catch::Approx(1.0).margin(1e-12));
        CHECK(idf_rare == Catch::Approx(std::log(9.0 / 2.0) + 1.0).margin(1e-12));
        CHECK(idf_rare > idf_common);
        for (double v : model.idf) CHECK(v > 0.0);
    }
    SECTION("one empty doc") {
        const std::vector<TokenStream> corpus{stream_of({})};
        CHECK(fit_tfidf(corpus).vocabulary.empty());
    }
    SECTION("empty corpus rejected") {
        CHECK_THROWS_AS(fit_tfidf(std::vector<TokenStream>{}), std::invalid_argument);
    }
}

TEST_CASE("vectorize: counts times idf, OOV ignored") {
    const std::vector<TokenStream> corpus{stream_of({"rio", "rio", "cuenca"}),
                                          stream_of({"cuenca"})};
    const TfIdfModel model = fit_tfidf(corpus);

    const TfIdfVector empty = vectorize(model, stream_of({}));
    CHECK(empty.weights.empty());
    CHECK(empty.l2_norm == 0.0);

    const TfIdfVector v = vectorize(model, stream_of({"rio", "rio", "rio", "nuevo"}));
    REQUIRE(v.weights.size() == 1);  // "nuevo" is out of vocabulary
    const double idf_rio = model.idf[model.vocabulary.at("rio")];
    CHECK(v.weights[0].second == Catch::Approx(3.0 * idf_rio).margin(1e-12));
    CHECK(v.l2_norm == Catch::Approx(3.0 * idf_rio).margin(1e-12));

    // hand-computed three-term doc
    const TfIdfVector w = vectorize(model, stream_of({"rio", "cuenca", "cuenca"}));
    const double idf_cuenca = model.idf[model.vocabulary.at("cuenca")];
    double expect_norm = std::sqrt(idf_rio * idf_rio + 4.0 * idf_cuenca * idf_cuenca);
    CHECK(w.l2_norm == Catch::Approx(expect_norm).margin(1e-12));
}

TEST_CASE("cosine: identity, orthogonality, zero convention") {
    const std::vector<TokenStream> corpus{stream_of({"uno", "dos"}), stream_of({"tres"})};
    const TfIdfModel model = fit_tfidf(corpus);
    const auto a = vectorize(model, corpus[0]);
    const auto b = vectorize(model, corpus[1]);
    const auto zero = vectorize(model, stream_of({}));
    CHECK(cosine(a, a) == Catch::Approx(1.0).margin(1e-9));
    CHECK(cosine(a, b) == 0.0);
    CHECK(cosine(a, zero) == 0.0);
    CHECK(cosine(zero, zero) == 0.0);
}

TEST_CASE("pairwise cosines match the dense brute-force oracle") {
    std::mt19937_64 rng(2024);
    std::vector<TokenStream> corpus;
    for (int d = 0; d < 10; ++d)
        corpus.push_back(normalize(test_support::random_doc(rng, 80, 120)));
    const test_support::DenseCosineOracle oracle(corpus);

    const TfIdfModel model = fit_tfidf(corpus);
    std::vector<TfIdfVector> vectors;
    for (const auto& doc : corpus) vectors.push_back(vectorize(model, doc));

    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j)
            CHECK(cosine(vectors[i], vectors[j]) ==
                  Catch::Approx(oracle.cosine(i, j)).margin(1e-9));
}
