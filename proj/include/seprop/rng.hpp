/*!
  \file rng.hpp
  \brief Counter-based Bernoulli sampling of input vectors

  The bit for (seed, input, vector) is a pure function of those three
  values, so any partition of the vector range across workers draws the
  same vectors.
*/

#pragma once

#include <cstdint>

namespace seprop
{

constexpr std::uint64_t splitmix64( std::uint64_t x ) noexcept
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

class bernoulli_stream
{
public:
  constexpr bernoulli_stream( std::uint64_t seed, std::uint64_t stream, double p ) noexcept
      : key_( splitmix64( seed ^ splitmix64( stream * 0xd1b54a32d192ed03ull + 0x8cb92ba72f3d8dd7ull ) ) ), p_( p )
  {
  }

  /* uniform double in [0, 1) for the given counter */
  constexpr double uniform( std::uint64_t counter ) const noexcept
  {
    return static_cast<double>( splitmix64( key_ + counter ) >> 11 ) * 0x1.0p-53;
  }

  constexpr bool sample( std::uint64_t counter ) const noexcept { return uniform( counter ) < p_; }

  /* bits for counters 64*word .. 64*word+63, lane i = counter 64*word+i */
  constexpr std::uint64_t word( std::uint64_t word_index ) const noexcept
  {
    if ( p_ <= 0.0 )
      return 0;
    if ( p_ >= 1.0 )
      return ~std::uint64_t{ 0 };
    std::uint64_t bits = 0;
    auto const base = word_index * 64;
    for ( unsigned lane = 0; lane < 64; ++lane )
      bits |= std::uint64_t{ sample( base + lane ) } << lane;
    return bits;
  }

private:
  std::uint64_t key_;
  double p_;
};

} // namespace seprop
