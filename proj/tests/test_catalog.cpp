#include "doctest.h"

#include <string>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "oracles.hpp"
#include "textio.hpp"

using namespace conelab;

TEST_CASE("rationals reduce on construction and print plainly") {
    CHECK(Rational(6, 4).num == 3);
    CHECK(Rational(6, 4).den == 2);
    CHECK(Rational(6, 4).text() == "3/2");
    CHECK(Rational(8, 2).text() == "4");
    CHECK(Rational(0, 7).num == 0);
    CHECK(Rational(5, 3).value() == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("gap threshold: exact values, monotone decay, domain") {
    CHECK(lambda_threshold(3) == 4.0);
    CHECK(lambda_threshold(4) == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
    CHECK(lambda_threshold(9) == 2.5);
    double prev = lambda_threshold(3);
    for (long long d = 4; d <= 60; ++d) {
        const double th = lambda_threshold(d);
        CHECK(th < prev);
        CHECK(th > 2.0);
        prev = th;
    }
    CHECK_THROWS_AS(lambda_threshold(2), domain_error);
}

TEST_CASE("label recomputation agrees with exact integer gap positions") {
    for (long long num = 1; num <= 60; ++num) {
        for (long long den = 1; den <= 8; ++den) {
            for (long long d : {3LL, 5LL, 10LL, 25LL}) {
                const Rational lambda(num, den);
                const int pos = oracle::gap_position_exact(lambda.num, lambda.den, d);
                const bool outside_open = pos != 1;
                const bool outside_closed = pos == -1 || pos == 3;

                CHECK(recompute_label(Label::strictly_stable, lambda, d) ==
                      (outside_closed ? Label::strictly_stable
                       : outside_open ? Label::stable
                                      : Label::unstable));
                CHECK(recompute_label(Label::stable, lambda, d) ==
                      (outside_open ? Label::stable : Label::unstable));
                CHECK(recompute_label(Label::unstable, lambda, d) == Label::unstable);
            }
        }
    }
}

TEST_CASE("label text matches the table typography") {
    CHECK(std::string(label_text(Label::unstable)) == "unstable");
    CHECK(std::string(label_text(Label::stable)) == "stable");
    CHECK(std::string(label_text(Label::strictly_stable)) == "s. stable");
}

TEST_CASE("catalog rows: counts, sampling, admissibility") {
    CHECK(catalog_rows(1).size() == 11);
    CHECK(catalog_rows(2).size() == 35);
    CHECK_THROWS_AS(catalog_rows(3), domain_error);

    for (int table : {1, 2}) {
        for (const CatalogRow& row : catalog_rows(table)) {
            const auto params = sample_params(row, 3);
            REQUIRE_FALSE(params.empty());
            if (row.arity == 0) CHECK(params.size() == 1);
            for (const auto& [p, q] : params) {
                if (row.arity > 0) CHECK(row.admissible(p, q));
                CHECK(row.dim_printed(p, q) >= 2);
                CHECK(row.dim_corrected(p, q) >= 2);
                const Rational lambda = row.lambda_normalized(p, q);
                CHECK(lambda.num > 0);
                CHECK(lambda.den > 0);
            }
            // Two-parameter samples come out ordered by (p+q, p).
            for (std::size_t i = 1; i < params.size(); ++i) {
                const auto [p0, q0] = params[i - 1];
                const auto [p1, q1] = params[i];
                CHECK((p0 + q0 < p1 + q1 || (p0 + q0 == p1 + q1 && p0 < p1)));
            }
        }
    }
}

TEST_CASE("both tables reproduce their printed labels at sampled parameters") {
    for (int table : {1, 2}) {
        const TableReport report = reproduce_table(table, 3);
        CHECK(report.all_match);
        CHECK(report.rows.size() >= catalog_rows(table).size());
        for (const RowSample& s : report.rows) {
            CHECK(s.match);
            CHECK(s.recomputed_corrected == s.row->tangential);
            CHECK(s.recomputed_printed == s.row->tangential);
            CHECK(s.dim_printed == s.row->dim_printed(s.p, s.q));
            CHECK(s.dim_corrected == s.row->dim_corrected(s.p, s.q));
        }
    }
}

TEST_CASE("comparison CSV: header, row count, match column") {
    const TableReport report = reproduce_table(1, 2);
    const std::string csv = render_catalog_csv(report);
    const std::string header =
        "family,cartan_type,params,dim_printed,dim_corrected,Lambda,threshold,"
        "expected_einstein,expected_tangential,recomputed_tangential,match";
    REQUIRE(csv.size() > header.size());
    CHECK(csv.substr(0, header.size()) == header);

    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == report.rows.size() + 1);
    CHECK(csv.find(",0\n") == std::string::npos); // no mismatched row
}
