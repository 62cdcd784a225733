/*!
  \file ser_report.hpp
  \brief Per-node soft error rate: upset rate x latching probability x EPP

  Rates are unit-agnostic; with the default rate and latching probability
  of 1 a report is a pure sensitization profile.
*/

#pragma once

#include "epp.hpp"
#include "netlist.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace seprop
{

enum class aggregation
{
  any,
  max
};

constexpr std::string_view to_string( aggregation a ) noexcept { return a == aggregation::any ? "any" : "max"; }

struct ser_config
{
  double default_r_seu = 1.0;
  double default_p_latched = 1.0;
  std::unordered_map<net_id, double> r_seu;
  std::unordered_map<net_id, double> p_latched;
  aggregation mode = aggregation::any;

  double rate( net_id n ) const
  {
    auto it = r_seu.find( n );
    return it == r_seu.end() ? default_r_seu : it->second;
  }

  double latch( net_id n ) const
  {
    auto it = p_latched.find( n );
    return it == p_latched.end() ? default_p_latched : it->second;
  }

  void validate() const
  {
    auto bad_rate = []( double r ) { return !( r >= 0.0 ) || std::isinf( r ); };
    auto bad_prob = []( double p ) { return !( p >= 0.0 && p <= 1.0 ); };
    if ( bad_rate( default_r_seu ) )
      throw std::invalid_argument( "upset rate must be a finite non-negative number" );
    if ( bad_prob( default_p_latched ) )
      throw std::invalid_argument( "latching probability must lie in [0, 1]" );
    for ( auto const& [n, r] : r_seu )
      if ( bad_rate( r ) )
        throw std::invalid_argument( "upset rate override must be a finite non-negative number" );
    for ( auto const& [n, p] : p_latched )
      if ( bad_prob( p ) )
        throw std::invalid_argument( "latching probability override must lie in [0, 1]" );
  }
};

inline double node_ser( double r_seu, double p_latched, double p_sensitized )
{
  if ( !( r_seu >= 0.0 ) )
    throw std::invalid_argument( "upset rate must be non-negative" );
  if ( !( p_latched >= 0.0 && p_latched <= 1.0 ) )
    throw std::invalid_argument( "latching probability outside [0, 1]" );
  if ( !( p_sensitized >= 0.0 && p_sensitized <= 1.0 ) )
    throw std::invalid_argument( "sensitization probability outside [0, 1]" );
  return r_seu * p_latched * p_sensitized;
}

struct ser_row
{
  net_id node;
  double r_seu = 0.0;
  double p_latched = 0.0;
  double p_sensitized = 0.0;
  double ser = 0.0;
  bool analyzed = true;
};

struct ser_report
{
  std::string circuit;
  std::string sp_method;
  aggregation mode = aggregation::any;
  std::vector<ser_row> rows; ///< one per net, id order
  double total_ser = 0.0;
  std::vector<net_id> ranking; ///< analyzed nodes by descending ser, ties by id
};

enum class coverage
{
  complete, ///< every net must have a report
  partial   ///< nets without a report become skipped rows
};

inline ser_report build_report( netlist const& nl, std::span<epp_report const> epp, ser_config const& cfg,
                                coverage cover = coverage::complete, std::string sp_label = {} )
{
  cfg.validate();
  std::vector<epp_report const*> by_net( nl.num_nets(), nullptr );
  for ( auto const& r : epp )
  {
    if ( !nl.contains( r.site ) )
      throw std::out_of_range( "EPP report for unknown net id " + std::to_string( index( r.site ) ) );
    by_net[index( r.site )] = &r;
  }

  ser_report rep;
  rep.circuit = nl.name();
  rep.sp_method = std::move( sp_label );
  rep.mode = cfg.mode;
  for ( std::size_t i = 0; i < nl.num_nets(); ++i )
  {
    auto const n = make_net( i );
    ser_row row{ n, cfg.rate( n ), cfg.latch( n ), 0.0, 0.0, by_net[i] != nullptr };
    if ( !row.analyzed )
    {
      if ( cover == coverage::complete )
        throw std::invalid_argument( "no EPP report for net '" + nl.net_name( n ) + "'" );
    }
    else
    {
      row.p_sensitized = cfg.mode == aggregation::any ? by_net[i]->aggregate_any : by_net[i]->aggregate_max;
      row.ser = node_ser( row.r_seu, row.p_latched, row.p_sensitized );
      rep.total_ser += row.ser;
      rep.ranking.push_back( n );
    }
    rep.rows.push_back( row );
  }
  std::stable_sort( rep.ranking.begin(), rep.ranking.end(), [&]( net_id a, net_id b ) {
    return rep.rows[index( a )].ser > rep.rows[index( b )].ser;
  } );
  return rep;
}

/* shortest round-trip text of a double, identical in JSON and CSV output */
inline std::string format_number( double x )
{
  return nlohmann::json( x ).dump();
}

inline nlohmann::ordered_json to_json( netlist const& nl, ser_report const& rep )
{
  nlohmann::ordered_json j;
  j["circuit"] = rep.circuit;
  j["sp_method"] = rep.sp_method;
  j["aggregation_mode"] = std::string( to_string( rep.mode ) );
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for ( auto const& row : rep.rows )
  {
    nlohmann::ordered_json node;
    node["name"] = nl.net_name( row.node );
    node["r_seu"] = row.r_seu;
    node["p_latched"] = row.p_latched;
    if ( row.analyzed )
    {
      node["p_sensitized"] = row.p_sensitized;
      node["ser"] = row.ser;
    }
    else
    {
      node["p_sensitized"] = nullptr;
      node["ser"] = nullptr;
    }
    node["analyzed"] = row.analyzed;
    nodes.push_back( std::move( node ) );
  }
  j["total_ser"] = rep.total_ser;
  auto& ranking = j["ranking"] = nlohmann::ordered_json::array();
  for ( auto n : rep.ranking )
    ranking.push_back( nl.net_name( n ) );
  return j;
}

inline void write_json( std::ostream& os, netlist const& nl, ser_report const& rep )
{
  os << to_json( nl, rep ).dump( 2 ) << "\n";
}

/*! \brief CSV with columns name,r_seu,p_latched,p_sensitized,ser,analyzed; skipped rows leave the
  last two numeric fields empty. A trailing `# total_ser,<value>` line closes the table. */
inline void write_csv( std::ostream& os, netlist const& nl, ser_report const& rep )
{
  os << "name,r_seu,p_latched,p_sensitized,ser,analyzed\n";
  for ( auto const& row : rep.rows )
  {
    os << nl.net_name( row.node ) << ',' << format_number( row.r_seu ) << ',' << format_number( row.p_latched ) << ',';
    if ( row.analyzed )
      os << format_number( row.p_sensitized ) << ',' << format_number( row.ser ) << ",true\n";
    else
      os << ",,false\n";
  }
  os << "# total_ser," << format_number( rep.total_ser ) << "\n";
}

} // namespace seprop
