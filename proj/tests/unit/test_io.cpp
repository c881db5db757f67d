#include "support.hpp"

#include "eit_qnlse/io.hpp"

#include <atomic>
#include <cstdlib>
#include <limits>
#include <vector>

using namespace eitq;

TEST_SUITE("io")
{
    TEST_CASE("shortest round-trip doubles")
    {
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(2.998e10) == "2.998e+10");
        CHECK(format_double(-2.28e-7) == "-2.28e-07");
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-1e20, 1e20);
        for (int i = 0; i < 1000; ++i) {
            const double v = u(rng) * std::pow(10.0, double(int(rng() % 40) - 20));
            CHECK(std::stod(format_double(v)) == v);
        }
    }

    TEST_CASE("csv writer")
    {
        std::ostringstream os;
        CsvWriter w(os, {"a", "b"});
        w.row({1.0, 0.5});
        CHECK(os.str() == "a,b\n1,0.5\n");
        CHECK_THROWS(w.row({1.0}));
    }

    TEST_CASE("sha256")
    {
        CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
        CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    TEST_CASE("parallel_for visits every index once")
    {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits)
            CHECK(h.load() == 1);
        CHECK(thread_limit() >= 1);
    }
}
