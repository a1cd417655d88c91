#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ilap/error.hpp"
#include "ilap/image.hpp"
#include "ilap/inpaint.hpp"

using namespace ilap;

namespace {

Image stripes(std::size_t n) {
  Image img(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      img.at(i, j) = 127.5 + 100.0 * std::sin(0.6 * j + 0.15 * i) + 0.2 * i;
  return img;
}

InpaintConfig small_config(Method m) {
  InpaintConfig cfg;
  cfg.method = m;
  cfg.patch_rows = cfg.patch_cols = 5;
  cfg.k = 12;
  cfg.k_sigma = 6;
  cfg.outer_iters = 2;
  cfg.seed = 4;
  return cfg;
}

}  // namespace

TEST_SUITE("inpaint") {

TEST_CASE("psnr") {
  Image a(4, 5, 10.0), b = a;
  CHECK(psnr(a, b) == std::numeric_limits<double>::infinity());
  for (auto& v : b.data) v += 255.0;
  CHECK(psnr(a, b) == doctest::Approx(0.0));
  b = a;
  for (auto& v : b.data) v += 1.0;
  CHECK(psnr(a, b) == doctest::Approx(20.0 * std::log10(255.0)));
  CHECK(psnr(a, b) == doctest::Approx(48.1308).epsilon(1e-5));
  CHECK(psnr(b, a) == psnr(a, b));
  CHECK_THROWS_AS(psnr(a, Image(5, 4)), Error);
}

TEST_CASE("psnr decreases with noise amplitude") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  const Image ref = stripes(16);
  std::vector<double> noise(ref.size());
  for (auto& v : noise) v = g(rng);
  double prev = std::numeric_limits<double>::infinity();
  for (double amp : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    Image f = ref;
    for (std::size_t k = 0; k < f.size(); ++k) f.data[k] += amp * noise[k];
    const double p = psnr(f, ref);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("reflection index map") {
  CHECK(reflect_index(-1, 5) == 1);
  CHECK(reflect_index(-3, 5) == 3);
  CHECK(reflect_index(5, 5) == 3);
  CHECK(reflect_index(6, 5) == 2);
  CHECK(reflect_index(4, 5) == 4);
  CHECK(reflect_index(-7, 5) == 1);
  CHECK(reflect_index(-2, 1) == 0);
  CHECK(reflect_index(-1, 2) == 1);
}

TEST_CASE("patches") {
  SUBCASE("single pixel, 3x3 patch") {
    Image img(1, 1, 7.0);
    const auto p = extract_patches(img, 3, 3);
    REQUIRE(p.patches.size() == 1);
    for (double v : p.patches.point(0)) CHECK(v == 7.0);
  }
  SUBCASE("centre patch of a 3x3 image is the image") {
    Image img(3, 3);
    for (std::size_t k = 0; k < 9; ++k) img.data[k] = k + 1.0;
    const auto p = extract_patches(img, 3, 3);
    const auto c = p.patches.point(4);
    CHECK(std::vector<double>(c.begin(), c.end()) == img.data);
  }
  SUBCASE("2x2 corner patch by hand") {
    Image img(2, 2);
    img.data = {1, 2, 3, 4};
    const auto p = extract_patches(img, 3, 3);
    const auto c = p.patches.point(0);
    CHECK(std::vector<double>(c.begin(), c.end()) == std::vector<double>{4, 3, 4, 2, 1, 2, 4, 3, 4});
  }
  SUBCASE("constant image gives constant patches") {
    Image img(6, 9, 42.0);
    const auto p = extract_patches(img, 5, 3);
    CHECK(p.patches.dim() == 15);
    for (double v : p.patches.coords()) CHECK(v == 42.0);
  }
  SUBCASE("rectangular patch layout is row-major") {
    Image img(5, 5);
    for (std::size_t k = 0; k < 25; ++k) img.data[k] = static_cast<double>(k);
    const auto p = extract_patches(img, 3, 5);
    const auto c = p.patches.point(2 * 5 + 2);
    CHECK(c[0] == img.at(1, 0));
    CHECK(c[14] == img.at(3, 4));
  }
  SUBCASE("invalid sizes") {
    Image img(2, 2, 1.0);
    CHECK_THROWS_AS(extract_patches(img, 2, 3), Error);
    CHECK_THROWS_AS(extract_patches(img, 7, 3), Error);
    CHECK_NOTHROW(extract_patches(img, 5, 5));
  }
}

TEST_CASE("masks") {
  const auto m = SampleMask::random(20, 30, 0.1, 3);
  CHECK(m.size() > 20);
  CHECK(m.size() < 110);
  CHECK(SampleMask::random(20, 30, 0.1, 3).pixels() == m.pixels());
  CHECK(SampleMask::random(5, 5, 1e-9, 1).size() == 1);
  CHECK(SampleMask::full(3, 4).size() == 12);
  CHECK_THROWS_AS(SampleMask(3, 3, {}), Error);
  CHECK_THROWS_AS(SampleMask(3, 3, {{3, 0}}), Error);
  CHECK_THROWS_AS(SampleMask::random(3, 3, 0.0, 1), Error);
}

TEST_CASE("full mask returns the input for every method") {
  const Image img = stripes(12);
  const auto mask = SampleMask::full(12, 12);
  for (Method m : {Method::GL, Method::WNLL, Method::IL}) {
    CHECK(inpaint(img, mask, small_config(m)).image == img);
    CHECK(oracle_weight_inpaint(img, mask, small_config(m)).image == img);
  }
}

TEST_CASE("constant image stays constant") {
  const Image img(10, 10, 77.0);
  const auto mask = SampleMask::random(10, 10, 0.1, 2);
  for (Method m : {Method::GL, Method::WNLL, Method::IL}) {
    const auto out = inpaint(img, mask, small_config(m)).image;
    for (double v : out.data) CHECK(v == doctest::Approx(77.0).epsilon(1e-9));
  }
}

TEST_CASE("outputs are in range, keep samples and are deterministic") {
  const Image img = stripes(20);
  const auto mask = SampleMask::random(20, 20, 0.15, 5);
  for (Method m : {Method::GL, Method::WNLL, Method::IL}) {
    const auto a = inpaint(img, mask, small_config(m)).image;
    const auto b = inpaint(img, mask, small_config(m)).image;
    CHECK(a == b);
    for (double v : a.data) {
      CHECK(v >= 0.0);
      CHECK(v <= 255.0);
    }
    for (const auto& [i, j] : mask.pixels()) CHECK(a.at(i, j) == img.at(i, j));
  }
}

TEST_CASE("IL beats GL on stripes with blind weights") {
  const Image img = stripes(64);
  const auto mask = SampleMask::random(64, 64, 0.10, 11);
  InpaintConfig cfg;
  cfg.patch_rows = cfg.patch_cols = 7;
  cfg.k = 20;
  cfg.k_sigma = 10;
  cfg.outer_iters = 3;
  cfg.seed = 1;
  cfg.solver.linear.tol = 1e-6;
  cfg.method = Method::GL;
  const double gl = psnr(inpaint(img, mask, cfg).image, img);
  cfg.method = Method::IL;
  const double il = psnr(inpaint(img, mask, cfg).image, img);
  MESSAGE("stripes 64x64 blind: GL " << gl << " dB, IL " << il << " dB");
  CHECK(il > gl);
}

TEST_CASE("mask with the wrong size") {
  CHECK_THROWS_AS(inpaint(Image(4, 4, 1.0), SampleMask::full(3, 4), small_config(Method::GL)), Error);
}

TEST_CASE("method names") {
  CHECK(parse_method("wnll") == Method::WNLL);
  CHECK(to_string(Method::IL) == "il");
  CHECK_THROWS_AS(parse_method("cg"), Error);
}

}  // TEST_SUITE
