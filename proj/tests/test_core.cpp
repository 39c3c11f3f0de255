#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adselect/csv.hpp"
#include "adselect/split.hpp"

#include "helpers.hpp"

#include <fstream>
#include <set>

using namespace adsel;

namespace {

std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& text) {
    const auto path = dir / name;
    std::ofstream out(path);
    out << text;
    return path;
}

} // namespace

TEST_CASE("load_dataset parses a plain numeric CSV") {
    const auto dir = testutil::temp_dir("core_load");
    const auto path = write_text(dir, "tiny.csv", "a,b\n1,2\n3,4\n5,6\n");
    const Dataset ds = load_dataset(path);
    CHECK(ds.n() == 3);
    CHECK(ds.dim() == 2);
    CHECK_FALSE(ds.labels.has_value());
    CHECK(ds.X(0, 0) == 1.0);
    CHECK(ds.X(2, 1) == 6.0);
    CHECK(ds.name == "tiny");
}

TEST_CASE("load_dataset parses a label column") {
    const auto dir = testutil::temp_dir("core_label");
    const auto path = write_text(dir, "lab.csv", "a,b,label\n1,2,0\n3,4,0\n5,6,1\n");
    const Dataset ds = load_dataset(path, std::string("label"));
    CHECK(ds.n() == 3);
    CHECK(ds.dim() == 2);
    REQUIRE(ds.labels.has_value());
    CHECK(*ds.labels == std::vector<int>{0, 0, 1});
}

TEST_CASE("load_dataset error paths") {
    const auto dir = testutil::temp_dir("core_err");
    CHECK_THROWS_AS(load_dataset(dir / "absent.csv"), IoError);

    const auto nan_path = write_text(dir, "nan.csv", "a,b\n1,2\nNaN,4\n");
    CHECK_THROWS_WITH_AS(load_dataset(nan_path), doctest::Contains("non-finite"), ParseError);

    const auto inf_path = write_text(dir, "inf.csv", "a\n1\ninf\n");
    CHECK_THROWS_AS(load_dataset(inf_path), ParseError);

    const auto text_path = write_text(dir, "text.csv", "a,b\n1,2\nx,4\n");
    CHECK_THROWS_AS(load_dataset(text_path), ParseError);

    const auto bad_label = write_text(dir, "badlab.csv", "a,label\n1,0\n2,2\n");
    CHECK_THROWS_AS(load_dataset(bad_label, std::string("label")), ParseError);

    const auto missing_label = write_text(dir, "nolab.csv", "a,b\n1,2\n3,4\n");
    CHECK_THROWS_AS(load_dataset(missing_label, std::string("label")), ParseError);

    const auto single_row = write_text(dir, "one.csv", "a,b\n1,2\n");
    CHECK_THROWS_AS(load_dataset(single_row), ValidationError);

    const auto ragged = write_text(dir, "ragged.csv", "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(load_dataset(ragged), ParseError);
}

TEST_CASE("dataset CSV round-trip is bit-exact") {
    const auto dir = testutil::temp_dir("core_rt");
    Dataset ds = testutil::random_dataset(99, 40, 5);
    ds.X(0, 0) = 0.1;                 // classic shortest-representation case
    ds.X(1, 1) = 1.0 / 3.0;
    ds.X(2, 2) = 1e-300;
    ds.X(3, 3) = -12345.678901234567;
    ds.labels = std::vector<int>(40, 0);
    (*ds.labels)[7] = 1;

    save_dataset(dir / "rt.csv", ds, "label");
    const Dataset back = load_dataset(dir / "rt.csv", std::string("label"));
    REQUIRE(back.n() == ds.n());
    REQUIRE(back.dim() == ds.dim());
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index c = 0; c < ds.dim(); ++c) {
            CHECK(back.X(i, c) == ds.X(i, c));
        }
    }
    CHECK(*back.labels == *ds.labels);
}

TEST_CASE("validate_dataset catches label violations") {
    Dataset ds = testutil::make_dataset("v", {{1.0}, {2.0}}, {0, 1});
    validate_dataset(ds);
    ds.labels = std::vector<int>{0, 2};
    CHECK_THROWS_AS(validate_dataset(ds), ValidationError);
    ds.labels = std::vector<int>{0};
    CHECK_THROWS_AS(validate_dataset(ds), ValidationError);
}

TEST_CASE("corpus rejects duplicate names") {
    Corpus corpus;
    corpus.add(testutil::make_dataset("a", {{1.0}, {2.0}}));
    CHECK_THROWS_AS(corpus.add(testutil::make_dataset("a", {{1.0}, {2.0}})), ValidationError);
}

namespace {

std::vector<std::string> fake_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("ds" + std::to_string(i));
    return names;
}

std::array<int, 3> split_counts(const std::map<std::string, Split>& assignment) {
    std::array<int, 3> counts{};
    for (const auto& [_, s] : assignment) ++counts[static_cast<std::size_t>(s)];
    return counts;
}

} // namespace

TEST_CASE("split sizes follow largest-remainder rounding") {
    const auto a100 = compute_split_assignment(fake_names(100), {0.60, 0.15, 0.25}, 7);
    CHECK(split_counts(a100) == std::array<int, 3>{60, 15, 25});

    const auto a4 = compute_split_assignment(fake_names(4), {0.5, 0.25, 0.25}, 7);
    CHECK(split_counts(a4) == std::array<int, 3>{2, 1, 1});
}

TEST_CASE("split assignment is deterministic in the seed") {
    const auto names = fake_names(60);
    const auto a1 = compute_split_assignment(names, {0.6, 0.15, 0.25}, 1);
    const auto a1_again = compute_split_assignment(names, {0.6, 0.15, 0.25}, 1);
    const auto a2 = compute_split_assignment(names, {0.6, 0.15, 0.25}, 2);
    CHECK(a1 == a1_again);
    CHECK(a1 != a2);
}

TEST_CASE("split partitions the corpus") {
    Corpus corpus;
    for (int i = 0; i < 25; ++i) {
        corpus.add(testutil::make_dataset("d" + std::to_string(i), {{1.0}, {2.0}, {3.0}}));
    }
    const Corpus split = split_corpus(std::move(corpus), {0.6, 0.15, 0.25}, 3);
    REQUIRE(split.split_assignment.has_value());
    CHECK(split.split_assignment->size() == 25);
    std::set<std::string> seen;
    for (Split s : {Split::train, Split::val, Split::test}) {
        for (const Dataset* ds : split.members(s)) seen.insert(ds->name);
    }
    CHECK(seen.size() == 25);
}

TEST_CASE("split error paths") {
    CHECK_THROWS_AS(compute_split_assignment(fake_names(10), {0.6, 0.2, 0.1}, 1),
                    ValidationError); // does not sum to 1
    CHECK_THROWS_AS(compute_split_assignment(fake_names(10), {0.6, -0.1, 0.5}, 1),
                    ValidationError);
    CHECK_THROWS_AS(compute_split_assignment(fake_names(3), {0.6, 0.15, 0.25}, 1),
                    ValidationError); // too small
    CHECK_THROWS_AS(compute_split_assignment(fake_names(4), {0.7, 0.2, 0.1}, 1),
                    ValidationError); // empty test split
}

TEST_CASE("splits JSON round-trip") {
    const auto dir = testutil::temp_dir("core_splits");
    const auto assignment = compute_split_assignment(fake_names(10), {0.6, 0.15, 0.25}, 5);
    save_splits(dir / "splits.json", assignment);
    CHECK(load_splits(dir / "splits.json") == assignment);
}
