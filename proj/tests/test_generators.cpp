#include "vcsp/generators.hpp"

#include <doctest.h>

using namespace vcsp;

TEST_CASE("generators are deterministic in seed and parameters") {
    for (const char* kind :
         {"cut_vertex", "planted_backdoor", "random_scattered", "random_submodular",
          "random_horn"}) {
        InstanceDocument a = generate(kind, 1234, GenParams{});
        InstanceDocument b = generate(kind, 1234, GenParams{});
        CHECK(emit_instance(a) == emit_instance(b));
        InstanceDocument c = generate(kind, 1235, GenParams{});
        CHECK(emit_instance(a) != emit_instance(c));
    }
    CHECK_THROWS_AS(generate("unknown", 1, GenParams{}), Error);
}

TEST_CASE("cut vertex: scattered backdoor, no single-language escape") {
    InstanceDocument doc = generate_cut_vertex(163, 3, 3);
    const Instance& instance = doc.instance;
    LanguageFamily family = builtin_family();
    CHECK(is_backdoor(instance, {0}, family, true));
    CHECK_FALSE(is_backdoor(instance, {0}, family, false));
    // neither single class admits a size-1 backdoor
    for (std::size_t i = 0; i < family.size(); ++i) {
        LanguageFamily single({family[i]});
        CHECK_FALSE(detect_backdoor_exhaustive(instance, 1, single, false).has_value());
        CHECK_FALSE(detect_backdoor_exhaustive(instance, 1, single, true).has_value());
    }
    CHECK_THROWS_AS(generate_cut_vertex(1, 1, 3), Error);
}

TEST_CASE("planted backdoor is verified and recorded") {
    InstanceDocument doc = generate_planted_backdoor(167, 7, 2);
    CHECK(doc.metadata.at("generator") == "planted_backdoor");
    CHECK(doc.metadata.count("planted") == 1);
    auto found = detect_backdoor_exhaustive(doc.instance, 2, builtin_family(), true);
    CHECK(found.has_value());
    CHECK_THROWS_AS(generate_planted_backdoor(1, 2, 1), Error);
}

TEST_CASE("random in-class generators land in their classes") {
    Rng rng(173);
    for (int round = 0; round < 10; ++round) {
        Instance horn = generate_random_horn(rng.next(), 5, 4).instance;
        CHECK(instance_in_language(horn, Language::min_closed_crisp(2)));
        Instance submodular = generate_random_submodular(rng.next(), 5, 4).instance;
        CHECK(instance_in_language(submodular, Language::submodular_boolean()));
        Instance scattered = generate_random_scattered(rng.next(), 2, 3).instance;
        CHECK(scattered_membership(scattered, builtin_family()));
    }
}
