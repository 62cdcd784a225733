/*!
  \file faultsim.hpp
  \brief Logic simulation with single bit-flip injection

  Scalar golden/faulty simulation of one vector, plus bit-parallel EPP
  measurement by random sampling (Monte Carlo) or by weighted enumeration
  of every input vector (exhaustive).
*/

#pragma once

#include "detail/parallel.hpp"
#include "detail/word_sim.hpp"
#include "epp.hpp"
#include "netlist.hpp"
#include "rng.hpp"
#include "sigprob.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seprop
{

/* one value (0 or 1) per pseudo-input, in netlist::pseudo_inputs() order */
using input_vector = std::vector<std::uint8_t>;

/* one value (0 or 1) per net, indexed by net id */
using net_values = std::vector<std::uint8_t>;

namespace detail
{

inline void check_vector( netlist const& nl, input_vector const& v )
{
  if ( v.size() != nl.pseudo_inputs().size() )
    throw std::invalid_argument( "input vector has " + std::to_string( v.size() ) + " values, circuit has " +
                                 std::to_string( nl.pseudo_inputs().size() ) + " inputs" );
  for ( auto b : v )
    if ( b > 1 )
      throw std::invalid_argument( "input vector values must be 0 or 1" );
}

inline std::uint8_t eval_scalar( gate_kind kind, std::span<net_id const> fanins, net_values const& values )
{
  unsigned v = values[index( fanins[0] )];
  for ( std::size_t k = 1; k < fanins.size(); ++k )
  {
    unsigned const x = values[index( fanins[k] )];
    switch ( kind )
    {
    case gate_kind::AND:
    case gate_kind::NAND: v &= x; break;
    case gate_kind::OR:
    case gate_kind::NOR: v |= x; break;
    case gate_kind::XOR:
    case gate_kind::XNOR: v ^= x; break;
    default: break;
    }
  }
  return static_cast<std::uint8_t>( is_inverting( kind ) ? ( v ^ 1u ) : v );
}

/* full evaluation; if forced is set, that net keeps the given value */
inline net_values simulate_scalar( netlist const& nl, input_vector const& v, net_id const* forced, std::uint8_t forced_value )
{
  net_values values( nl.num_nets(), 0 );
  auto const pis = nl.pseudo_inputs();
  for ( std::size_t k = 0; k < pis.size(); ++k )
    values[index( pis[k] )] = v[k];
  if ( forced )
    values[index( *forced )] = forced_value;
  for ( auto n : nl.evaluation_order() )
    if ( !forced || n != *forced )
      values[index( n )] = eval_scalar( nl.kind( n ), nl.fanins( n ), values );
  return values;
}

} // namespace detail

inline net_values simulate_vector( netlist const& nl, input_vector const& v )
{
  detail::check_vector( nl, v );
  return detail::simulate_scalar( nl, v, nullptr, 0 );
}

struct pair_simulation
{
  net_values golden;
  net_values faulty;
  std::vector<net_id> flipped_outputs; ///< capture points that differ, ascending id
};

/*! \brief Golden run and a full re-simulation with `site` forced to its complement.

  With `inject` false the site is forced to its golden value instead,
  which must leave every output unchanged.
*/
inline pair_simulation simulate_pair( netlist const& nl, input_vector const& v, net_id site, bool inject = true )
{
  if ( !nl.contains( site ) )
    throw std::out_of_range( "unknown net id " + std::to_string( index( site ) ) );
  detail::check_vector( nl, v );
  pair_simulation r;
  r.golden = detail::simulate_scalar( nl, v, nullptr, 0 );
  auto const forced = static_cast<std::uint8_t>( inject ? r.golden[index( site )] ^ 1u : r.golden[index( site )] );
  r.faulty = detail::simulate_scalar( nl, v, &site, forced );
  for ( auto c : nl.capture_points() )
    if ( r.golden[index( c )] != r.faulty[index( c )] )
      r.flipped_outputs.push_back( c );
  return r;
}

enum class sim_method
{
  montecarlo,
  exhaustive
};

constexpr std::string_view to_string( sim_method m ) noexcept
{
  return m == sim_method::montecarlo ? "montecarlo" : "exhaustive";
}

/*! \brief Simulated EPP of one site.

  `per_output` lists every capture point in the site's cone (ascending
  id); `any_output` is the probability that at least one of them flips.
*/
struct sim_epp_result
{
  net_id site;
  std::vector<output_epp> per_output;
  double any_output = 0.0;
  std::uint64_t vectors_used = 0;
  sim_method method = sim_method::montecarlo;

  friend bool operator==( sim_epp_result const&, sim_epp_result const& ) = default;
};

namespace detail
{

/* cone of one site prepared for in-place faulty re-evaluation */
struct fault_program
{
  net_id site;
  std::vector<net_id> gates;         ///< on-path gates, topological order
  std::vector<net_id> outputs;       ///< reachable capture points, ascending id
  std::vector<std::size_t> slot;     ///< index of each output in `saved`
  std::vector<std::uint64_t> saved;  ///< golden words of site and gates
  std::vector<std::uint64_t> diff;   ///< per-output difference mask of the last word
};

inline fault_program make_program( netlist const& nl, net_id site )
{
  auto cone = fanout_cone( nl, site );
  fault_program p{ site, std::move( cone.on_path_gates ), std::move( cone.reachable_outputs ), {}, {}, {} };
  for ( auto out : p.outputs )
  {
    if ( out == site )
      p.slot.push_back( 0 );
    else
      p.slot.push_back( static_cast<std::size_t>( std::find( p.gates.begin(), p.gates.end(), out ) - p.gates.begin() ) + 1 );
  }
  p.saved.resize( p.gates.size() + 1 );
  p.diff.resize( p.outputs.size() );
  return p;
}

/*! \brief Flips the site in the current golden words and re-evaluates its cone
  in place, fills the per-output difference masks, then restores the golden
  values. Returns the mask of lanes where any output differs.
*/
inline std::uint64_t inject_word( word_simulator& sim, fault_program& p )
{
  auto& values = sim.values();
  p.saved[0] = values[index( p.site )];
  for ( std::size_t k = 0; k < p.gates.size(); ++k )
    p.saved[k + 1] = values[index( p.gates[k] )];

  values[index( p.site )] = ~p.saved[0];
  sim.run( p.gates );

  std::uint64_t any = 0;
  for ( std::size_t o = 0; o < p.outputs.size(); ++o )
  {
    p.diff[o] = p.saved[p.slot[o]] ^ values[index( p.outputs[o] )];
    any |= p.diff[o];
  }

  values[index( p.site )] = p.saved[0];
  for ( std::size_t k = 0; k < p.gates.size(); ++k )
    values[index( p.gates[k] )] = p.saved[k + 1];
  return any;
}

inline void check_sites( netlist const& nl, std::span<net_id const> sites )
{
  for ( auto s : sites )
    if ( !nl.contains( s ) )
      throw std::out_of_range( "unknown net id " + std::to_string( index( s ) ) );
}

} // namespace detail

/*! \brief Monte Carlo EPP for several sites sharing the same sampled vectors.

  Vector i is drawn from counters (seed, input, i), so each site's result
  equals a separate mc_epp call and does not depend on `jobs`.
*/
inline std::vector<sim_epp_result> mc_epp_sites( netlist const& nl, std::span<net_id const> sites,
                                                 input_probabilities const& inputs, std::uint64_t vectors,
                                                 std::uint64_t seed, unsigned jobs = 1 )
{
  if ( vectors == 0 )
    throw std::invalid_argument( "vector count must be at least 1" );
  detail::check_sites( nl, sites );
  auto const pi_sp = resolve_inputs( nl, inputs );
  auto const pis = nl.pseudo_inputs();
  std::vector<bernoulli_stream> streams;
  for ( std::size_t k = 0; k < pis.size(); ++k )
    streams.emplace_back( seed, k, pi_sp[k] );

  std::vector<detail::fault_program> templates;
  for ( auto s : sites )
    templates.push_back( detail::make_program( nl, s ) );

  struct counts
  {
    std::vector<std::vector<std::uint64_t>> per_output;
    std::vector<std::uint64_t> any;
  };
  auto const words = ( vectors + 63 ) / 64;
  auto const workers = std::max( 1u, jobs );
  std::vector<counts> partial( workers );

  detail::parallel_chunks( words, workers, [&]( std::size_t w, std::size_t begin, std::size_t end ) {
    auto programs = templates;
    auto& c = partial[w];
    c.any.assign( sites.size(), 0 );
    for ( auto const& p : programs )
      c.per_output.emplace_back( p.outputs.size(), 0 );
    detail::word_simulator sim( nl );
    for ( auto word = begin; word < end; ++word )
    {
      for ( std::size_t k = 0; k < pis.size(); ++k )
        sim.set( pis[k], streams[k].word( word ) );
      sim.run();
      auto const mask = word + 1 == words ? detail::lane_mask( vectors - 64 * word ) : ~std::uint64_t{ 0 };
      for ( std::size_t s = 0; s < programs.size(); ++s )
      {
        auto& p = programs[s];
        c.any[s] += static_cast<std::uint64_t>( std::popcount( detail::inject_word( sim, p ) & mask ) );
        for ( std::size_t o = 0; o < p.outputs.size(); ++o )
          c.per_output[s][o] += static_cast<std::uint64_t>( std::popcount( p.diff[o] & mask ) );
      }
    }
  } );

  std::vector<sim_epp_result> results;
  auto const total = static_cast<double>( vectors );
  for ( std::size_t s = 0; s < sites.size(); ++s )
  {
    sim_epp_result r{ sites[s], {}, 0.0, vectors, sim_method::montecarlo };
    std::uint64_t any = 0;
    for ( auto const& c : partial )
      if ( !c.any.empty() )
        any += c.any[s];
    r.any_output = static_cast<double>( any ) / total;
    auto const& outs = templates[s].outputs;
    for ( std::size_t o = 0; o < outs.size(); ++o )
    {
      std::uint64_t hits = 0;
      for ( auto const& c : partial )
        if ( !c.per_output.empty() )
          hits += c.per_output[s][o];
      r.per_output.push_back( { outs[o], static_cast<double>( hits ) / total } );
    }
    results.push_back( std::move( r ) );
  }
  return results;
}

/*! \brief Monte Carlo EPP: fraction of `vectors` sampled vectors on which the flip is observed. */
inline sim_epp_result mc_epp( netlist const& nl, net_id site, input_probabilities const& inputs,
                              std::uint64_t vectors, std::uint64_t seed, unsigned jobs = 1 )
{
  net_id const one[] = { site };
  return std::move( mc_epp_sites( nl, one, inputs, vectors, seed, jobs ).front() );
}

/*! \brief Exact EPP for several sites by weighted enumeration of all input vectors.

  Sites are spread over `jobs` workers; each site's sums are accumulated
  in vector order, so results do not depend on `jobs`.
*/
inline std::vector<sim_epp_result> exhaustive_epp_sites( netlist const& nl, std::span<net_id const> sites,
                                                         input_probabilities const& inputs, unsigned jobs = 1 )
{
  if ( nl.pseudo_inputs().size() > max_exhaustive_inputs )
    throw limit_error( "exhaustive simulation supports at most " + std::to_string( max_exhaustive_inputs ) +
                       " inputs (primary inputs plus flip-flop outputs); circuit has " +
                       std::to_string( nl.pseudo_inputs().size() ) );
  detail::check_sites( nl, sites );
  auto const pi_sp = resolve_inputs( nl, inputs );
  detail::exhaustive_enumerator space( nl, pi_sp );
  std::uint64_t const vectors = std::uint64_t{ 1 } << nl.pseudo_inputs().size();

  std::vector<sim_epp_result> results( sites.size() );
  detail::parallel_chunks( sites.size(), jobs, [&]( std::size_t, std::size_t begin, std::size_t end ) {
    std::vector<detail::fault_program> programs;
    std::vector<std::vector<double>> per_output;
    std::vector<double> any( end - begin, 0.0 );
    for ( auto s = begin; s < end; ++s )
    {
      programs.push_back( detail::make_program( nl, sites[s] ) );
      per_output.emplace_back( programs.back().outputs.size(), 0.0 );
    }
    detail::word_simulator sim( nl );
    for ( std::uint64_t word = 0; word < space.num_words(); ++word )
    {
      auto const ww = space.word_weight( word );
      if ( ww == 0.0 )
        continue;
      space.load( sim, word );
      sim.run();
      for ( std::size_t s = 0; s < programs.size(); ++s )
      {
        auto& p = programs[s];
        any[s] += ww * space.lane_sum( detail::inject_word( sim, p ) );
        for ( std::size_t o = 0; o < p.outputs.size(); ++o )
          per_output[s][o] += ww * space.lane_sum( p.diff[o] );
      }
    }
    for ( std::size_t s = 0; s < programs.size(); ++s )
    {
      auto& r = results[begin + s];
      r = { sites[begin + s], {}, std::clamp( any[s], 0.0, 1.0 ), vectors, sim_method::exhaustive };
      for ( std::size_t o = 0; o < programs[s].outputs.size(); ++o )
        r.per_output.push_back( { programs[s].outputs[o], std::clamp( per_output[s][o], 0.0, 1.0 ) } );
    }
  } );
  return results;
}

inline sim_epp_result exhaustive_epp( netlist const& nl, net_id site, input_probabilities const& inputs )
{
  net_id const one[] = { site };
  return std::move( exhaustive_epp_sites( nl, one, inputs ).front() );
}

} // namespace seprop
