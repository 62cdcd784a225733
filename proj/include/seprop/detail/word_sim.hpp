/*!
  \file word_sim.hpp
  \brief Bit-parallel logic evaluation (64 vectors per machine word)
*/

#pragma once

#include "../netlist.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace seprop::detail
{

inline std::uint64_t eval_word( gate_kind kind, std::span<net_id const> fanins, std::uint64_t const* values ) noexcept
{
  auto v = values[index( fanins[0] )];
  switch ( kind )
  {
  case gate_kind::AND:
  case gate_kind::NAND:
    for ( std::size_t k = 1; k < fanins.size(); ++k )
      v &= values[index( fanins[k] )];
    break;
  case gate_kind::OR:
  case gate_kind::NOR:
    for ( std::size_t k = 1; k < fanins.size(); ++k )
      v |= values[index( fanins[k] )];
    break;
  case gate_kind::XOR:
  case gate_kind::XNOR:
    for ( std::size_t k = 1; k < fanins.size(); ++k )
      v ^= values[index( fanins[k] )];
    break;
  default:
    break;
  }
  return is_inverting( kind ) ? ~v : v;
}

/*! \brief Holds one word per net; pseudo-inputs are set by the caller. */
class word_simulator
{
public:
  explicit word_simulator( netlist const& nl ) : nl_( nl ), values_( nl.num_nets(), 0 ) {}

  void set( net_id n, std::uint64_t word ) noexcept { values_[index( n )] = word; }
  std::uint64_t value( net_id n ) const noexcept { return values_[index( n )]; }

  void run() noexcept
  {
    for ( auto n : nl_.evaluation_order() )
      values_[index( n )] = eval_word( nl_.kind( n ), nl_.fanins( n ), values_.data() );
  }

  /* re-evaluates the given gates in order, in place */
  void run( std::span<net_id const> gates ) noexcept
  {
    for ( auto n : gates )
      values_[index( n )] = eval_word( nl_.kind( n ), nl_.fanins( n ), values_.data() );
  }

  std::vector<std::uint64_t>& values() noexcept { return values_; }

private:
  netlist const& nl_;
  std::vector<std::uint64_t> values_;
};

inline constexpr std::array<std::uint64_t, 6> lane_patterns = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

inline constexpr std::uint64_t lane_mask( std::uint64_t lanes ) noexcept
{
  return lanes >= 64 ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << lanes ) - 1 );
}

/*! \brief Enumerates every pseudo-input assignment with its probability weight.

  Pseudo-input k takes bit k of the vector index. The lowest six inputs
  vary across lanes of a word, the rest are constant within a word, so
  the weight of lane l in word w factors as word_weight(w) * lane_weight(l).
*/
class exhaustive_enumerator
{
public:
  exhaustive_enumerator( netlist const& nl, std::span<double const> input_sp ) : nl_( nl ), sp_( input_sp.begin(), input_sp.end() )
  {
    auto const k = sp_.size();
    lane_inputs_ = k < 6 ? k : 6;
    num_words_ = k <= 6 ? 1 : ( std::uint64_t{ 1 } << ( k - 6 ) );
    valid_ = lane_mask( std::uint64_t{ 1 } << lane_inputs_ );

    std::array<double, 64> lane_weight{};
    for ( unsigned lane = 0; lane < 64; ++lane )
    {
      double w = ( valid_ >> lane ) & 1u ? 1.0 : 0.0;
      for ( std::size_t j = 0; j < lane_inputs_; ++j )
        w *= ( ( lane >> j ) & 1u ) ? sp_[j] : 1.0 - sp_[j];
      lane_weight[lane] = w;
    }
    for ( unsigned b = 0; b < 8; ++b )
      for ( unsigned v = 0; v < 256; ++v )
      {
        double s = 0.0;
        for ( unsigned bit = 0; bit < 8; ++bit )
          if ( ( v >> bit ) & 1u )
            s += lane_weight[8 * b + bit];
        byte_sum_[b][v] = s;
      }
  }

  std::uint64_t num_words() const noexcept { return num_words_; }
  std::uint64_t valid_lanes() const noexcept { return valid_; }

  void load( word_simulator& sim, std::uint64_t word ) const noexcept
  {
    auto const pis = nl_.pseudo_inputs();
    for ( std::size_t j = 0; j < pis.size(); ++j )
    {
      if ( j < 6 )
        sim.set( pis[j], lane_patterns[j] & valid_ );
      else
        sim.set( pis[j], ( ( word >> ( j - 6 ) ) & 1u ) ? valid_ : 0 );
    }
  }

  double word_weight( std::uint64_t word ) const noexcept
  {
    double w = 1.0;
    for ( std::size_t j = 6; j < sp_.size(); ++j )
      w *= ( ( word >> ( j - 6 ) ) & 1u ) ? sp_[j] : 1.0 - sp_[j];
    return w;
  }

  /* sum of lane weights over the set bits of mask */
  double lane_sum( std::uint64_t mask ) const noexcept
  {
    mask &= valid_;
    double s = 0.0;
    for ( unsigned b = 0; b < 8; ++b )
      s += byte_sum_[b][( mask >> ( 8 * b ) ) & 0xffu];
    return s;
  }

private:
  netlist const& nl_;
  std::vector<double> sp_;
  std::size_t lane_inputs_ = 0;
  std::uint64_t num_words_ = 1;
  std::uint64_t valid_ = 0;
  std::array<std::array<double, 256>, 8> byte_sum_{};
};

} // namespace seprop::detail
