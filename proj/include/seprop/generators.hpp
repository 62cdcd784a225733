/*!
  \file generators.hpp
  \brief Random BENCH circuits for testing and benchmarking

  Fanout-free forests (every net feeds at most one gate) and general DAGs
  with reconvergent fan-out. Both return BENCH text; parse it with
  `parse_bench`.
*/

#pragma once

#include "epp.hpp"
#include "netlist.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace seprop
{

namespace detail
{

inline constexpr std::array<gate_kind, 8> combinational_kinds = {
    gate_kind::AND, gate_kind::NAND, gate_kind::OR, gate_kind::NOR,
    gate_kind::XOR, gate_kind::XNOR, gate_kind::NOT, gate_kind::BUFF };

inline gate_kind pick_kind( std::mt19937_64& rng )
{
  return combinational_kinds[std::uniform_int_distribution<std::size_t>( 0, combinational_kinds.size() - 1 )( rng )];
}

inline bool chance( std::mt19937_64& rng, double p ) { return std::bernoulli_distribution( p )( rng ); }

struct bench_text
{
  std::ostringstream inputs, outputs, gates;

  void gate( std::string const& out, gate_kind kind, std::vector<std::string> const& ins )
  {
    gates << out << " = " << to_string( kind ) << "(";
    for ( std::size_t k = 0; k < ins.size(); ++k )
      gates << ( k ? ", " : "" ) << ins[k];
    gates << ")\n";
  }

  std::string str( std::string const& title ) const
  {
    return "# " + title + "\n" + inputs.str() + outputs.str() + gates.str();
  }
};

} // namespace detail

struct fanout_free_options
{
  unsigned max_pseudo_inputs = 12;
  unsigned max_depth = 8;
  double state_probability = 0.15;  ///< chance that a leaf is a DFF output
  double extra_output_probability = 0.1;
};

/*! \brief Random forest in which every net has at most one combinational consumer. */
inline std::string random_fanout_free_bench( std::mt19937_64& rng, fanout_free_options const& opt = {} )
{
  struct root
  {
    std::string name;
    unsigned depth;
  };
  detail::bench_text text;
  auto const leaves = std::uniform_int_distribution<unsigned>( 2, std::max( 2u, opt.max_pseudo_inputs ) )( rng );
  std::vector<root> roots;
  std::vector<std::string> state;
  for ( unsigned i = 0; i < leaves; ++i )
  {
    if ( i > 0 && detail::chance( rng, opt.state_probability ) )
    {
      state.push_back( "S" + std::to_string( i ) );
      roots.push_back( { state.back(), 0 } );
    }
    else
    {
      roots.push_back( { "I" + std::to_string( i ), 0 } );
      text.inputs << "INPUT(" << roots.back().name << ")\n";
    }
  }

  std::vector<std::string> internal;
  auto const target = std::uniform_int_distribution<std::size_t>( 1, 3 )( rng );
  unsigned gate_count = 0;
  for ( int attempt = 0; attempt < 4000 && roots.size() > target; ++attempt )
  {
    auto const kind = detail::pick_kind( rng );
    std::size_t arity = 1;
    if ( kind != gate_kind::NOT && kind != gate_kind::BUFF )
      arity = std::min<std::size_t>( roots.size(), detail::chance( rng, 0.3 ) ? 3 : 2 );
    if ( arity == 1 && !detail::chance( rng, 0.35 ) )
      continue;
    if ( arity >= 2 && arity > roots.size() )
      continue;
    std::shuffle( roots.begin(), roots.end(), rng );
    unsigned depth = 0;
    for ( std::size_t k = 0; k < arity; ++k )
      depth = std::max( depth, roots[roots.size() - 1 - k].depth + 1 );
    if ( depth > opt.max_depth )
      continue;
    std::vector<std::string> ins;
    for ( std::size_t k = 0; k < arity; ++k )
    {
      ins.push_back( roots.back().name );
      roots.pop_back();
    }
    auto name = "G" + std::to_string( gate_count++ );
    text.gate( name, kind, ins );
    internal.push_back( name );
    roots.push_back( { name, depth } );
  }

  for ( auto const& r : roots )
    text.outputs << "OUTPUT(" << r.name << ")\n";
  for ( auto const& n : internal )
    if ( std::none_of( roots.begin(), roots.end(), [&]( root const& r ) { return r.name == n; } ) &&
         detail::chance( rng, opt.extra_output_probability ) )
      text.outputs << "OUTPUT(" << n << ")\n";
  for ( auto const& q : state )
  {
    auto const& d = roots[std::uniform_int_distribution<std::size_t>( 0, roots.size() - 1 )( rng )].name;
    text.gates << q << " = DFF(" << d << ")\n";
  }
  return text.str( "random fanout-free circuit" );
}

struct dag_options
{
  unsigned primary_inputs = 8;
  unsigned state_bits = 0;
  unsigned gates = 40;
  unsigned max_fanin = 3;
  unsigned window = 12;          ///< fan-ins mostly come from the last `window` nets
  double local_probability = 0.7;
  unsigned extra_outputs = 2;
};

/*! \brief Random combinational DAG (plus optional DFF state) with reconvergent fan-out. */
inline std::string random_dag_bench( std::mt19937_64& rng, dag_options const& opt = {} )
{
  detail::bench_text text;
  std::vector<std::string> nets;
  std::vector<unsigned> uses;
  for ( unsigned i = 0; i < opt.primary_inputs; ++i )
  {
    nets.push_back( "I" + std::to_string( i ) );
    text.inputs << "INPUT(" << nets.back() << ")\n";
  }
  for ( unsigned i = 0; i < opt.state_bits; ++i )
    nets.push_back( "S" + std::to_string( i ) );
  uses.assign( nets.size(), 0 );
  auto const sources = nets.size();

  for ( unsigned g = 0; g < opt.gates; ++g )
  {
    auto const kind = detail::pick_kind( rng );
    std::size_t arity = 1;
    if ( kind != gate_kind::NOT && kind != gate_kind::BUFF )
      arity = std::min<std::size_t>( nets.size(), std::uniform_int_distribution<std::size_t>( 2, std::max( 2u, opt.max_fanin ) )( rng ) );
    if ( arity < 2 && kind != gate_kind::NOT && kind != gate_kind::BUFF )
      continue;

    std::vector<std::size_t> picked;
    while ( picked.size() < arity )
    {
      std::size_t cand;
      auto unused_source = std::find( uses.begin(), uses.begin() + static_cast<std::ptrdiff_t>( sources ), 0u );
      if ( unused_source != uses.begin() + static_cast<std::ptrdiff_t>( sources ) && detail::chance( rng, 0.5 ) )
        cand = static_cast<std::size_t>( unused_source - uses.begin() );
      else if ( detail::chance( rng, opt.local_probability ) )
      {
        auto const lo = nets.size() > opt.window ? nets.size() - opt.window : 0;
        cand = std::uniform_int_distribution<std::size_t>( lo, nets.size() - 1 )( rng );
      }
      else
        cand = std::uniform_int_distribution<std::size_t>( 0, nets.size() - 1 )( rng );
      if ( std::find( picked.begin(), picked.end(), cand ) == picked.end() )
        picked.push_back( cand );
    }
    std::vector<std::string> ins;
    for ( auto c : picked )
    {
      ins.push_back( nets[c] );
      ++uses[c];
    }
    auto name = "N" + std::to_string( g );
    text.gate( name, kind, ins );
    nets.push_back( name );
    uses.push_back( 0 );
  }

  std::vector<std::uint8_t> is_out( nets.size(), 0 );
  for ( std::size_t i = sources; i < nets.size(); ++i )
    if ( uses[i] == 0 )
      is_out[i] = 1;
  for ( unsigned k = 0; k < opt.extra_outputs && nets.size() > sources; ++k )
    is_out[std::uniform_int_distribution<std::size_t>( sources, nets.size() - 1 )( rng )] = 1;
  if ( nets.size() == sources )
    is_out[0] = 1;
  for ( std::size_t i = 0; i < nets.size(); ++i )
    if ( is_out[i] )
      text.outputs << "OUTPUT(" << nets[i] << ")\n";
  for ( unsigned i = 0; i < opt.state_bits; ++i )
  {
    auto const lo = nets.size() > sources ? sources : 0;
    auto const d = std::uniform_int_distribution<std::size_t>( lo, nets.size() - 1 )( rng );
    text.gates << nets[opt.primary_inputs + i] << " = DFF(" << nets[d] << ")\n";
  }
  return text.str( "random reconvergent circuit" );
}

/*! \brief True if some site's cone contains a gate with two or more on-path inputs. */
inline bool has_reconvergence( netlist const& nl )
{
  for ( std::size_t i = 0; i < nl.num_nets(); ++i )
  {
    auto const cone = fanout_cone( nl, make_net( i ) );
    std::vector<std::uint8_t> on( nl.num_nets(), 0 );
    for ( auto n : cone.on_path_nets )
      on[index( n )] = 1;
    for ( auto g : cone.on_path_gates )
    {
      unsigned count = 0;
      for ( auto f : nl.fanins( g ) )
        count += on[index( f )];
      if ( count >= 2 )
        return true;
    }
  }
  return false;
}

/* true if no net has more than one combinational consumer (repeated fan-in counts twice) */
inline bool is_fanout_free( netlist const& nl )
{
  for ( std::size_t i = 0; i < nl.num_nets(); ++i )
  {
    std::size_t uses = 0;
    for ( auto g : nl.fanouts( make_net( i ) ) )
      for ( auto f : nl.fanins( g ) )
        uses += f == make_net( i );
    if ( uses > 1 )
      return false;
  }
  return true;
}

} // namespace seprop
