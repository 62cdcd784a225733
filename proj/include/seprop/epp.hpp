/*!
  \file epp.hpp
  \brief Analytical error propagation probability (EPP)

  For one error site, the site is seeded with a pure `a`, every on-path
  net is visited once in topological order, and each on-path gate
  combines its on-path inputs' distributions with the off-path inputs
  lifted from their signal probabilities. The EPP to a capture point is
  P(a) + P(a') there.
*/

#pragma once

#include "detail/parallel.hpp"
#include "four_value.hpp"
#include "netlist.hpp"
#include "sigprob.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace seprop
{

struct output_epp
{
  net_id output;
  double epp;

  friend bool operator==( output_epp const&, output_epp const& ) = default;
};

/*! \brief EPP from one site to every capture point it reaches.

  `per_output` is sorted by net id. `aggregate_any` combines the outputs
  as if they were independent, 1 - prod(1 - epp).
*/
struct epp_report
{
  net_id site;
  std::vector<output_epp> per_output;
  double aggregate_any = 0.0;
  double aggregate_max = 0.0;

  std::optional<double> epp_to( net_id output ) const
  {
    auto it = std::lower_bound( per_output.begin(), per_output.end(), output,
                                []( output_epp const& e, net_id n ) { return e.output < n; } );
    if ( it == per_output.end() || it->output != output )
      return std::nullopt;
    return it->epp;
  }

  friend bool operator==( epp_report const&, epp_report const& ) = default;
};

inline void finalize_aggregates( epp_report& r )
{
  double miss = 1.0;
  double best = 0.0;
  for ( auto const& o : r.per_output )
  {
    miss *= 1.0 - o.epp;
    best = std::max( best, o.epp );
  }
  r.aggregate_max = best;
  r.aggregate_any = std::clamp( 1.0 - miss, best, 1.0 );
}

/*! \brief Reusable per-worker propagation state.

  Scratch arrays are sized to the net count once; a generation stamp
  marks which entries belong to the current site, so switching sites
  costs only the cone size.
*/
class epp_engine
{
public:
  epp_engine( netlist const& nl, sp_map const& sp )
      : nl_( nl ), sp_( sp ), dist_( nl.num_nets() ), stamp_( nl.num_nets(), 0 )
  {
    if ( sp.size() != nl.num_nets() )
      throw std::invalid_argument( "signal probability map does not match the netlist" );
  }

  /*! \brief Propagates from `site`; returns the on-path nets in topological order. */
  std::span<net_id const> propagate( net_id site, polarity seed = polarity::direct )
  {
    if ( !nl_.contains( site ) )
      throw std::out_of_range( "unknown net id " + std::to_string( index( site ) ) );
    if ( ++generation_ == 0 )
    {
      std::fill( stamp_.begin(), stamp_.end(), 0 );
      generation_ = 1;
    }

    // mark the cone breadth-first, then collect it by walking the
    // topological order forward from the site; cheaper than sorting
    queue_.clear();
    queue_.push_back( site );
    stamp_[index( site )] = generation_;
    for ( std::size_t head = 0; head < queue_.size(); ++head )
      for ( auto f : nl_.fanouts( queue_[head] ) )
        if ( stamp_[index( f )] != generation_ )
        {
          stamp_[index( f )] = generation_;
          queue_.push_back( f );
        }
    cone_.clear();
    cone_.push_back( site );
    auto const order = nl_.topo_order();
    for ( auto pos = nl_.topo_position( site ) + 1; cone_.size() < queue_.size(); ++pos )
      if ( stamp_[index( order[pos] )] == generation_ )
        cone_.push_back( order[pos] );

    dist_[index( site )] = seed_dist( seed );
    for ( std::size_t k = 1; k < cone_.size(); ++k )
    {
      auto const n = cone_[k];
      auto const fi = nl_.fanins( n );
      dist_[index( n )] = detail::fold_gate( nl_.kind( n ), fi.size(), [&]( std::size_t j ) {
        auto const f = fi[j];
        if ( stamp_[index( f )] == generation_ )
          return dist_[index( f )];
        auto const p = sp_.values[index( f )];
        return four_value_dist{ 0.0, 0.0, p, 1.0 - p };
      } );
    }
    return cone_;
  }

  bool on_path( net_id n ) const { return stamp_.at( index( n ) ) == generation_ && generation_ != 0; }

  /* valid for on-path nets of the last propagate() */
  four_value_dist const& dist( net_id n ) const { return dist_.at( index( n ) ); }

  epp_report analyze( net_id site )
  {
    epp_report r{ site, {}, 0.0, 0.0 };
    auto const cone = propagate( site );
    auto const captures = nl_.capture_points();
    auto const push = [&]( net_id n ) {
      r.per_output.push_back( { n, std::clamp( dist_[index( n )].error_probability(), 0.0, 1.0 ) } );
    };
    if ( captures.size() <= cone.size() )
    {
      // capture points are already in id order
      for ( auto c : captures )
        if ( stamp_[index( c )] == generation_ )
          push( c );
    }
    else
    {
      for ( auto n : cone )
        if ( nl_.is_capture_point( n ) )
          push( n );
      std::sort( r.per_output.begin(), r.per_output.end(),
                 []( output_epp const& x, output_epp const& y ) { return x.output < y.output; } );
    }
    finalize_aggregates( r );
    return r;
  }

private:
  netlist const& nl_;
  sp_map const& sp_;
  std::vector<four_value_dist> dist_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::vector<net_id> cone_;
  std::vector<net_id> queue_;
};

/*! \brief Reference propagation over a precomputed cone.

  Returns a distribution for exactly the cone's on-path nets.
*/
inline std::map<net_id, four_value_dist> propagate_from_site( netlist const& nl, cone_info const& cone,
                                                              sp_map const& sp, polarity seed = polarity::direct )
{
  if ( sp.size() != nl.num_nets() )
    throw std::invalid_argument( "signal probability map does not match the netlist" );
  std::map<net_id, four_value_dist> dists;
  dists.emplace( cone.site, seed_dist( seed ) );
  std::vector<four_value_dist> ins;
  for ( auto n : cone.on_path_gates )
  {
    ins.clear();
    for ( auto f : nl.fanins( n ) )
    {
      auto it = dists.find( f );
      ins.push_back( it != dists.end() ? it->second : lift_off_path( sp[f] ) );
    }
    dists.emplace( n, gate_rule( nl.kind( n ), ins ) );
  }
  return dists;
}

/* P(a) + P(a') at output, or nullopt if output is not on-path */
inline std::optional<double> find_epp( std::map<net_id, four_value_dist> const& dists, net_id output )
{
  auto it = dists.find( output );
  if ( it == dists.end() )
    return std::nullopt;
  return it->second.error_probability();
}

/* 0 for nets outside the cone; use find_epp to tell the cases apart */
inline double epp_of( std::map<net_id, four_value_dist> const& dists, net_id output )
{
  return find_epp( dists, output ).value_or( 0.0 );
}

inline epp_report analyze_site( netlist const& nl, sp_map const& sp, net_id site )
{
  epp_engine engine( nl, sp );
  return engine.analyze( site );
}

/*! \brief Reports for `sites`, in the given order, spread over `jobs` workers. */
inline std::vector<epp_report> analyze_sites( netlist const& nl, sp_map const& sp, std::span<net_id const> sites,
                                              unsigned jobs = 1 )
{
  for ( auto s : sites )
    if ( !nl.contains( s ) )
      throw std::out_of_range( "unknown net id " + std::to_string( index( s ) ) );
  std::vector<epp_report> reports( sites.size() );
  detail::parallel_chunks( sites.size(), jobs, [&]( std::size_t, std::size_t begin, std::size_t end ) {
    epp_engine engine( nl, sp );
    for ( auto i = begin; i < end; ++i )
      reports[i] = engine.analyze( sites[i] );
  } );
  return reports;
}

/*! \brief One report per net, in net id order. */
inline std::vector<epp_report> analyze_all( netlist const& nl, sp_map const& sp, unsigned jobs = 1 )
{
  std::vector<net_id> sites( nl.num_nets() );
  for ( std::size_t i = 0; i < sites.size(); ++i )
    sites[i] = make_net( i );
  return analyze_sites( nl, sp, sites, jobs );
}

} // namespace seprop
