#include <ampath/random.hpp>

namespace ampath {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index)
{
  return splitmix64(parent ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double Rng::uniform01()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

} // namespace ampath
