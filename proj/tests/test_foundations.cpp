#include <doctest.h>

#include <filesystem>

#include "styleseg/hash.hpp"
#include "styleseg/io.hpp"
#include "styleseg/npy.hpp"
#include "styleseg/rng.hpp"
#include "styleseg/tensor.hpp"

using namespace styleseg;

TEST_CASE("tensor shape and indexing") {
    TensorF t({2, 3, 4});
    CHECK(t.numel() == 24);
    t.at(1, 2, 3) = 7.f;
    CHECK(t.v[23] == 7.f);
    CHECK(t.shape_str() == "(2,3,4)");
}

TEST_CASE("rng determinism and stream independence") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());

    Rng c = Rng(42).derive("x");
    Rng d = Rng(42).derive("y");
    bool all_equal = true;
    for (int i = 0; i < 10; ++i)
        if (c.uniform() != d.uniform()) all_equal = false;
    CHECK_FALSE(all_equal);
}

TEST_CASE("rng normal moments") {
    Rng r(7);
    double sum = 0, sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double x = r.normal();
        sum += x;
        sum2 += x * x;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("npy round trip float32 and uint8") {
    auto dir = fs::temp_directory_path() / "styleseg_npy_test";
    fs::create_directories(dir);

    TensorF t({3, 5});
    Rng r(1);
    for (auto& x : t.v) x = static_cast<float>(r.uniform());
    npy_save(dir / "a.npy", t);
    auto t2 = npy_load<float>(dir / "a.npy");
    CHECK(t2.shape == t.shape);
    CHECK(t2.v == t.v);

    MaskT m({4, 4});
    for (size_t i = 0; i < m.v.size(); ++i) m.v[i] = static_cast<uint8_t>(i % 7);
    npy_save(dir / "m.npy", m);
    auto m2 = npy_load<uint8_t>(dir / "m.npy");
    CHECK(m2.v == m.v);

    CHECK_THROWS_AS(npy_load<float>(dir / "m.npy"), DataError);
    fs::remove_all(dir);
}

TEST_CASE("npy rank-1 shape header") {
    TensorD t({5});
    for (int i = 0; i < 5; ++i) t.v[static_cast<size_t>(i)] = i;
    std::string bytes = npy_encode(t);
    CHECK(bytes.find("(5,)") != std::string::npos);
    auto back = npy_decode<double>(bytes);
    CHECK(back.shape == std::vector<int>{5});
    CHECK(back.v == t.v);
}

TEST_CASE("hashing is stable and content sensitive") {
    CHECK(hash_string("abc") == hash_string("abc"));
    CHECK(hash_string("abc") != hash_string("abd"));
    CHECK(hash_hex(hash_string("abc")).size() == 16);
}

TEST_CASE("atomic file write and tree hash") {
    auto dir = fs::temp_directory_path() / "styleseg_io_test";
    fs::remove_all(dir);
    fs::create_directories(dir / "sub");
    atomic_write_file(dir / "x.txt", "hello");
    atomic_write_file(dir / "sub" / "y.txt", "world");
    CHECK(read_file(dir / "x.txt") == "hello");
    uint64_t h1 = hash_tree(dir);
    atomic_write_file(dir / "x.txt", "hello");
    CHECK(hash_tree(dir) == h1);
    atomic_write_file(dir / "x.txt", "hellp");
    CHECK(hash_tree(dir) != h1);
    fs::remove_all(dir);
}
