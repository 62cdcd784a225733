/*!
  \file sigprob.hpp
  \brief Signal probability: the probability that a net carries logic 1

  Three estimators: a one-pass topological propagation that assumes gate
  inputs are independent, counter-seeded Monte Carlo sampling, and
  weighted exhaustive enumeration (the exact value, up to rounding).
*/

#pragma once

#include "detail/parallel.hpp"
#include "detail/word_sim.hpp"
#include "netlist.hpp"
#include "rng.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace seprop
{

enum class sp_method
{
  independent,
  montecarlo,
  exact
};

constexpr std::string_view to_string( sp_method m ) noexcept
{
  switch ( m )
  {
  case sp_method::independent: return "independent";
  case sp_method::montecarlo: return "montecarlo";
  case sp_method::exact: return "exact";
  }
  return "?";
}

inline std::optional<sp_method> parse_sp_method( std::string_view s )
{
  if ( s == "independent" ) return sp_method::independent;
  if ( s == "montecarlo" ) return sp_method::montecarlo;
  if ( s == "exact" ) return sp_method::exact;
  return std::nullopt;
}

/* largest pseudo-input count accepted by exhaustive enumeration */
inline constexpr std::size_t max_exhaustive_inputs = 24;

class limit_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Probability of 1 on each pseudo-input.

  Unlisted primary inputs take `default_primary`, unlisted DFF outputs
  (state bits) take `default_state`. With `use_defaults` off every
  pseudo-input must be listed.
*/
struct input_probabilities
{
  double default_primary = 0.5;
  double default_state = 0.5;
  bool use_defaults = true;
  std::unordered_map<net_id, double> overrides;
};

/* one probability per pseudo-input, in netlist::pseudo_inputs() order */
inline std::vector<double> resolve_inputs( netlist const& nl, input_probabilities const& in )
{
  auto in_range = []( double p ) { return p >= 0.0 && p <= 1.0; };
  if ( !in_range( in.default_primary ) || !in_range( in.default_state ) )
    throw std::invalid_argument( "default input probability outside [0, 1]" );
  for ( auto const& [n, p] : in.overrides )
  {
    if ( !nl.contains( n ) || !nl.is_pseudo_input( n ) )
      throw std::invalid_argument( "input probability given for net '" +
                                   ( nl.contains( n ) ? nl.net_name( n ) : std::to_string( index( n ) ) ) +
                                   "', which is not a primary input or flip-flop output" );
    if ( !in_range( p ) )
      throw std::invalid_argument( "input probability for '" + nl.net_name( n ) + "' outside [0, 1]" );
  }

  std::vector<double> r;
  r.reserve( nl.pseudo_inputs().size() );
  for ( auto n : nl.pseudo_inputs() )
  {
    if ( auto it = in.overrides.find( n ); it != in.overrides.end() )
      r.push_back( it->second );
    else if ( in.use_defaults )
      r.push_back( nl.kind( n ) == gate_kind::DFF ? in.default_state : in.default_primary );
    else
      throw std::invalid_argument( "no probability given for input '" + nl.net_name( n ) + "'" );
  }
  return r;
}

struct sp_map
{
  sp_method method = sp_method::independent;
  std::vector<double> values;

  double operator[]( net_id n ) const { return values.at( index( n ) ); }
  std::size_t size() const noexcept { return values.size(); }
};

/*! \brief One topological pass assuming independent gate inputs.

  Multi-input XOR is folded left to right.
*/
inline sp_map sp_independent( netlist const& nl, input_probabilities const& inputs )
{
  auto const pi_sp = resolve_inputs( nl, inputs );
  sp_map sp{ sp_method::independent, std::vector<double>( nl.num_nets(), 0.0 ) };
  auto const pis = nl.pseudo_inputs();
  for ( std::size_t k = 0; k < pis.size(); ++k )
    sp.values[index( pis[k] )] = pi_sp[k];

  for ( auto n : nl.evaluation_order() )
  {
    auto const fi = nl.fanins( n );
    double p = sp.values[index( fi[0] )];
    switch ( nl.kind( n ) )
    {
    case gate_kind::AND:
    case gate_kind::NAND:
      for ( std::size_t k = 1; k < fi.size(); ++k )
        p *= sp.values[index( fi[k] )];
      break;
    case gate_kind::OR:
    case gate_kind::NOR:
    {
      double q = 1.0 - p;
      for ( std::size_t k = 1; k < fi.size(); ++k )
        q *= 1.0 - sp.values[index( fi[k] )];
      p = 1.0 - q;
      break;
    }
    case gate_kind::XOR:
    case gate_kind::XNOR:
      for ( std::size_t k = 1; k < fi.size(); ++k )
      {
        auto const r = sp.values[index( fi[k] )];
        p = p * ( 1.0 - r ) + r * ( 1.0 - p );
      }
      break;
    default:
      break;
    }
    sp.values[index( n )] = is_inverting( nl.kind( n ) ) ? 1.0 - p : p;
  }
  return sp;
}

/*! \brief Fraction of `vectors` sampled input vectors that set each net to 1.

  Vector i is drawn from counters (seed, input, i), so the result depends
  only on (seed, vectors) and not on `jobs`.
*/
inline sp_map sp_montecarlo( netlist const& nl, input_probabilities const& inputs, std::uint64_t vectors,
                             std::uint64_t seed, unsigned jobs = 1 )
{
  if ( vectors == 0 )
    throw std::invalid_argument( "vector count must be at least 1" );
  auto const pi_sp = resolve_inputs( nl, inputs );
  auto const pis = nl.pseudo_inputs();
  std::vector<bernoulli_stream> streams;
  for ( std::size_t k = 0; k < pis.size(); ++k )
    streams.emplace_back( seed, k, pi_sp[k] );

  auto const words = ( vectors + 63 ) / 64;
  auto const n = nl.num_nets();
  auto const workers = std::max( 1u, jobs );
  std::vector<std::vector<std::uint64_t>> ones( workers, std::vector<std::uint64_t>( n, 0 ) );

  detail::parallel_chunks( words, workers, [&]( std::size_t w, std::size_t begin, std::size_t end ) {
    detail::word_simulator sim( nl );
    auto& count = ones[w];
    for ( auto word = begin; word < end; ++word )
    {
      for ( std::size_t k = 0; k < pis.size(); ++k )
        sim.set( pis[k], streams[k].word( word ) );
      sim.run();
      auto const mask = word + 1 == words ? detail::lane_mask( vectors - 64 * word ) : ~std::uint64_t{ 0 };
      for ( std::size_t i = 0; i < n; ++i )
        count[i] += static_cast<std::uint64_t>( std::popcount( sim.values()[i] & mask ) );
    }
  } );

  sp_map sp{ sp_method::montecarlo, std::vector<double>( n, 0.0 ) };
  for ( std::size_t i = 0; i < n; ++i )
  {
    std::uint64_t total = 0;
    for ( auto const& c : ones )
      total += c[i];
    sp.values[i] = static_cast<double>( total ) / static_cast<double>( vectors );
  }
  return sp;
}

/*! \brief Exact signal probabilities by weighted enumeration of all input vectors. */
inline sp_map sp_exact( netlist const& nl, input_probabilities const& inputs )
{
  if ( nl.pseudo_inputs().size() > max_exhaustive_inputs )
    throw limit_error( "exact enumeration supports at most " + std::to_string( max_exhaustive_inputs ) +
                       " inputs (primary inputs plus flip-flop outputs); circuit has " +
                       std::to_string( nl.pseudo_inputs().size() ) );
  auto const pi_sp = resolve_inputs( nl, inputs );
  detail::exhaustive_enumerator space( nl, pi_sp );
  detail::word_simulator sim( nl );
  auto const n = nl.num_nets();
  std::vector<double> acc( n, 0.0 );
  for ( std::uint64_t word = 0; word < space.num_words(); ++word )
  {
    space.load( sim, word );
    sim.run();
    auto const ww = space.word_weight( word );
    if ( ww == 0.0 )
      continue;
    for ( std::size_t i = 0; i < n; ++i )
      acc[i] += ww * space.lane_sum( sim.values()[i] );
  }
  // pseudo-inputs are exact by construction
  auto const pis = nl.pseudo_inputs();
  for ( std::size_t k = 0; k < pis.size(); ++k )
    acc[index( pis[k] )] = pi_sp[k];
  for ( auto& p : acc )
    p = std::clamp( p, 0.0, 1.0 );
  return { sp_method::exact, std::move( acc ) };
}

inline sp_map compute_sp( netlist const& nl, input_probabilities const& inputs, sp_method method,
                          std::uint64_t vectors = 0, std::uint64_t seed = 0, unsigned jobs = 1 )
{
  switch ( method )
  {
  case sp_method::montecarlo: return sp_montecarlo( nl, inputs, vectors, seed, jobs );
  case sp_method::exact: return sp_exact( nl, inputs );
  default: return sp_independent( nl, inputs );
  }
}

} // namespace seprop
