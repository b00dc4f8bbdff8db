#include "uamfleet/random.hpp"

namespace uam {

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t base_seed, std::string_view stream, std::int64_t index) {
  // FNV-1a over the stream name, then mix everything together.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = Mix64(base_seed);
  s = Mix64(s ^ h);
  s = Mix64(s ^ static_cast<std::uint64_t>(index));
  return s;
}

double UniformOpenClosed(Rng& rng) {
  // generate_canonical is in [0, 1); flip it.
  // libstdc++ can return exactly 1.0 from generate_canonical.
  double u = 1.0 - std::generate_canonical<double, 53>(rng);
  return u > 0.0 ? u : 0x1p-53;
}

}  // namespace uam
