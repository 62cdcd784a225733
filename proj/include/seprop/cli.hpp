/*!
  \file cli.hpp
  \brief `seprop` command-line front end

  Subcommands `analyze`, `simulate`, `compare` and `sp`. Exit status is 0
  on success, 1 for runtime or analysis errors (including netlist parse
  errors) and 2 for usage or configuration errors.

  Report files contain no wall-clock values, so a fixed configuration
  always produces byte-identical files. Timings go to stderr and, with
  `--timing PATH`, to a separate JSON file.
*/

#pragma once

#include "epp.hpp"
#include "faultsim.hpp"
#include "netlist.hpp"
#include "ser_report.hpp"
#include "sigprob.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace seprop::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_runtime = 1;
inline constexpr int exit_usage = 2;

class usage_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class output_format
{
  json,
  csv
};

/*! \brief Fully resolved settings of one run; net names are resolved after parsing. */
struct run_config
{
  std::string netlist_path;
  sp_method method = sp_method::independent;
  std::map<std::string, double> input_sp;
  double default_input_sp = 0.5;
  double default_state_sp = 0.5;
  std::map<std::string, double> r_seu;
  std::map<std::string, double> p_latched;
  double default_r_seu = 1.0;
  double default_p_latched = 1.0;
  aggregation mode = aggregation::any;
  std::optional<std::uint64_t> vectors;
  std::uint64_t seed = 1;
  std::optional<std::vector<std::string>> sites;
  std::string out;
  std::optional<output_format> format;
  unsigned jobs = 1;
  std::string timing_path;
  std::string summary_path;
  bool quiet = false;
};

inline constexpr std::uint64_t default_vectors = 10000;

namespace detail
{

inline std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw std::runtime_error( "cannot open '" + path + "'" );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output( std::string const& path, std::string const& text, std::ostream& out )
{
  if ( path.empty() || path == "-" )
  {
    out << text;
    return;
  }
  std::ofstream f( path, std::ios::binary | std::ios::trunc );
  if ( !f )
    throw std::runtime_error( "cannot write '" + path + "'" );
  f << text;
}

inline std::vector<std::string> split_list( std::string const& s )
{
  std::vector<std::string> r;
  std::string cur;
  std::istringstream in( s );
  while ( std::getline( in, cur, ',' ) )
  {
    auto const b = cur.find_first_not_of( " \t" );
    auto const e = cur.find_last_not_of( " \t" );
    if ( b != std::string::npos )
      r.push_back( cur.substr( b, e - b + 1 ) );
  }
  return r;
}

inline aggregation parse_aggregation( std::string const& s )
{
  if ( s == "any" ) return aggregation::any;
  if ( s == "max" ) return aggregation::max;
  throw usage_error( "aggregation must be 'any' or 'max', got '" + s + "'" );
}

inline output_format parse_format( std::string const& s )
{
  if ( s == "json" ) return output_format::json;
  if ( s == "csv" ) return output_format::csv;
  throw usage_error( "format must be 'json' or 'csv', got '" + s + "'" );
}

inline sp_method parse_method( std::string const& s )
{
  if ( auto m = parse_sp_method( s ) )
    return *m;
  throw usage_error( "sp method must be independent, montecarlo or exact, got '" + s + "'" );
}

/* applies a JSON config document; unknown keys are rejected */
inline void apply_config_file( run_config& cfg, std::string const& path )
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse( read_file( path ) );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw usage_error( "config '" + path + "': " + e.what() );
  }
  catch ( std::runtime_error const& e )
  {
    throw usage_error( e.what() );
  }
  if ( !j.is_object() )
    throw usage_error( "config '" + path + "' must be a JSON object" );

  auto number_map = []( nlohmann::json const& v, char const* key ) {
    if ( !v.is_object() )
      throw usage_error( std::string( "config key '" ) + key + "' must map net names to numbers" );
    std::map<std::string, double> m;
    for ( auto const& [name, x] : v.items() )
    {
      if ( !x.is_number() )
        throw usage_error( std::string( "config key '" ) + key + "': value for '" + name + "' is not a number" );
      m[name] = x.get<double>();
    }
    return m;
  };

  try
  {
    for ( auto const& [key, v] : j.items() )
    {
      if ( key == "sp_method" ) cfg.method = parse_method( v.get<std::string>() );
      else if ( key == "vectors" ) cfg.vectors = v.get<std::uint64_t>();
      else if ( key == "seed" ) cfg.seed = v.get<std::uint64_t>();
      else if ( key == "aggregation" ) cfg.mode = parse_aggregation( v.get<std::string>() );
      else if ( key == "format" ) cfg.format = parse_format( v.get<std::string>() );
      else if ( key == "jobs" ) cfg.jobs = v.get<unsigned>();
      else if ( key == "input_sp" ) cfg.input_sp = number_map( v, "input_sp" );
      else if ( key == "default_input_sp" ) cfg.default_input_sp = v.get<double>();
      else if ( key == "default_state_sp" ) cfg.default_state_sp = v.get<double>();
      else if ( key == "r_seu" ) cfg.r_seu = number_map( v, "r_seu" );
      else if ( key == "p_latched" ) cfg.p_latched = number_map( v, "p_latched" );
      else if ( key == "default_r_seu" ) cfg.default_r_seu = v.get<double>();
      else if ( key == "default_p_latched" ) cfg.default_p_latched = v.get<double>();
      else if ( key == "sites" )
      {
        if ( v.is_string() && v.get<std::string>() == "all" )
          cfg.sites.reset();
        else
          cfg.sites = v.get<std::vector<std::string>>();
      }
      else
        throw usage_error( "config '" + path + "': unknown key '" + key + "'" );
    }
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw usage_error( "config '" + path + "': " + e.what() );
  }
}

/* the pieces of run_config that need the parsed netlist */
struct resolved
{
  input_probabilities inputs;
  ser_config ser;
  std::vector<net_id> sites;
  bool all_sites = true;
};

inline net_id lookup( netlist const& nl, std::string const& name, char const* what )
{
  auto n = nl.find( name );
  if ( !n )
    throw usage_error( std::string( what ) + ": no net named '" + name + "'" );
  return *n;
}

inline resolved resolve( netlist const& nl, run_config const& cfg )
{
  resolved r;
  r.inputs.default_primary = cfg.default_input_sp;
  r.inputs.default_state = cfg.default_state_sp;
  for ( auto const& [name, p] : cfg.input_sp )
    r.inputs.overrides[lookup( nl, name, "input_sp" )] = p;
  r.ser.default_r_seu = cfg.default_r_seu;
  r.ser.default_p_latched = cfg.default_p_latched;
  r.ser.mode = cfg.mode;
  for ( auto const& [name, x] : cfg.r_seu )
    r.ser.r_seu[lookup( nl, name, "r_seu" )] = x;
  for ( auto const& [name, x] : cfg.p_latched )
    r.ser.p_latched[lookup( nl, name, "p_latched" )] = x;

  try
  {
    (void)resolve_inputs( nl, r.inputs );
    r.ser.validate();
  }
  catch ( std::invalid_argument const& e )
  {
    throw usage_error( e.what() );
  }
  if ( cfg.vectors && *cfg.vectors == 0 )
    throw usage_error( "--vectors must be at least 1" );

  if ( cfg.sites )
  {
    r.all_sites = false;
    std::vector<std::uint8_t> seen( nl.num_nets(), 0 );
    for ( auto const& name : *cfg.sites )
    {
      auto const n = lookup( nl, name, "--sites" );
      if ( !seen[index( n )] )
        r.sites.push_back( n );
      seen[index( n )] = 1;
    }
    std::sort( r.sites.begin(), r.sites.end() );
  }
  else
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
      r.sites.push_back( make_net( i ) );
  return r;
}

inline netlist load_netlist( run_config const& cfg, std::ostream& err )
{
  auto text = read_file( cfg.netlist_path );
  auto name = cfg.netlist_path;
  if ( auto slash = name.find_last_of( "/\\" ); slash != std::string::npos )
    name = name.substr( slash + 1 );
  if ( auto dot = name.rfind( '.' ); dot != std::string::npos && dot > 0 )
    name = name.substr( 0, dot );
  try
  {
    auto nl = parse_bench( text, name );
    if ( !cfg.quiet )
      for ( auto const& w : nl.warnings() )
        err << "warning: " << cfg.netlist_path << ": " << w << "\n";
    return nl;
  }
  catch ( parse_error const& e )
  {
    throw std::runtime_error( cfg.netlist_path + ":" + e.what() );
  }
}

using clock = std::chrono::steady_clock;

inline double seconds_since( clock::time_point t0 )
{
  return std::chrono::duration<double>( clock::now() - t0 ).count();
}

inline void report_timing( run_config const& cfg, std::ostream& err, nlohmann::ordered_json const& timing )
{
  if ( !cfg.quiet )
    err << "timing: " << timing.dump() << "\n";
  if ( !cfg.timing_path.empty() )
    write_output( cfg.timing_path, timing.dump( 2 ) + "\n", err );
}

inline bool simulate_exhaustively( run_config const& cfg ) { return cfg.method == sp_method::exact; }

inline std::vector<sim_epp_result> run_simulation( netlist const& nl, run_config const& cfg, resolved const& r )
{
  if ( simulate_exhaustively( cfg ) )
    return exhaustive_epp_sites( nl, r.sites, r.inputs, cfg.jobs );
  return mc_epp_sites( nl, r.sites, r.inputs, cfg.vectors.value_or( default_vectors ), cfg.seed, cfg.jobs );
}

} // namespace detail

/*! \brief `analyze`: signal probabilities, analytical EPP and the SER report. */
inline int cmd_analyze( run_config const& cfg, std::ostream& out, std::ostream& err )
{
  auto const nl = detail::load_netlist( cfg, err );
  auto const r = detail::resolve( nl, cfg );

  auto const t_sp = detail::clock::now();
  auto const sp = compute_sp( nl, r.inputs, cfg.method, cfg.vectors.value_or( default_vectors ), cfg.seed, cfg.jobs );
  auto const sp_seconds = detail::seconds_since( t_sp );

  auto const t_epp = detail::clock::now();
  auto const reports = analyze_sites( nl, sp, r.sites, cfg.jobs );
  auto const epp_seconds = detail::seconds_since( t_epp );

  auto const rep = build_report( nl, reports, r.ser, r.all_sites ? coverage::complete : coverage::partial,
                                 std::string( to_string( cfg.method ) ) );
  std::ostringstream text;
  if ( cfg.format.value_or( output_format::json ) == output_format::json )
    write_json( text, nl, rep );
  else
    write_csv( text, nl, rep );
  detail::write_output( cfg.out, text.str(), out );

  nlohmann::ordered_json timing;
  timing["command"] = "analyze";
  timing["sites"] = r.sites.size();
  timing["sp_seconds"] = sp_seconds;
  timing["epp_seconds"] = epp_seconds;
  detail::report_timing( cfg, err, timing );
  return exit_ok;
}

/*! \brief `simulate`: fault-injection EPP per site (exhaustive when the sp method is exact). */
inline int cmd_simulate( run_config const& cfg, std::ostream& out, std::ostream& err )
{
  auto const nl = detail::load_netlist( cfg, err );
  auto const r = detail::resolve( nl, cfg );

  auto const t0 = detail::clock::now();
  auto const results = detail::run_simulation( nl, cfg, r );
  auto const sim_seconds = detail::seconds_since( t0 );

  auto const captures = nl.capture_points();
  std::ostringstream text;
  if ( cfg.format.value_or( output_format::csv ) == output_format::csv )
  {
    text << "site,method,vectors,any_output";
    for ( auto c : captures )
      text << ',' << nl.net_name( c );
    text << '\n';
    for ( auto const& res : results )
    {
      text << nl.net_name( res.site ) << ',' << to_string( res.method ) << ',' << res.vectors_used << ','
           << format_number( res.any_output );
      std::size_t k = 0;
      for ( auto c : captures )
      {
        double v = 0.0;
        if ( k < res.per_output.size() && res.per_output[k].output == c )
          v = res.per_output[k++].epp;
        text << ',' << format_number( v );
      }
      text << '\n';
    }
  }
  else
  {
    nlohmann::ordered_json j;
    j["circuit"] = nl.name();
    j["method"] = results.empty() ? std::string( detail::simulate_exhaustively( cfg ) ? "exhaustive" : "montecarlo" )
                                  : std::string( to_string( results.front().method ) );
    j["seed"] = cfg.seed;
    auto& rows = j["sites"] = nlohmann::ordered_json::array();
    for ( auto const& res : results )
    {
      nlohmann::ordered_json row;
      row["site"] = nl.net_name( res.site );
      row["vectors"] = res.vectors_used;
      row["any_output"] = res.any_output;
      auto& po = row["per_output"] = nlohmann::ordered_json::object();
      for ( auto const& o : res.per_output )
        po[nl.net_name( o.output )] = o.epp;
      rows.push_back( std::move( row ) );
    }
    text << j.dump( 2 ) << '\n';
  }
  detail::write_output( cfg.out, text.str(), out );

  nlohmann::ordered_json timing;
  timing["command"] = "simulate";
  timing["sites"] = r.sites.size();
  timing["simulation_seconds"] = sim_seconds;
  detail::report_timing( cfg, err, timing );
  return exit_ok;
}

/*! \brief Per-site analytical vs simulated EPP, plus a summary of their differences. */
struct comparison
{
  struct row
  {
    net_id site;
    double epp_any, epp_max, sim_any, abs_diff, rel_diff;
    sim_method method;
    std::uint64_t vectors;
  };
  std::vector<row> rows;
  double mean_abs_diff = 0.0, max_abs_diff = 0.0;
  double mean_abs_diff_any = 0.0, mean_abs_diff_max = 0.0;
  double mean_abs_diff_per_output = 0.0, max_abs_diff_per_output = 0.0;
  std::size_t output_pairs = 0;
  double epp_seconds = 0.0, simulation_seconds = 0.0;
};

inline comparison compare_epp( std::span<epp_report const> analytical, std::span<sim_epp_result const> simulated,
                               aggregation mode )
{
  if ( analytical.size() != simulated.size() )
    throw std::invalid_argument( "analytical and simulated results cover different sites" );
  comparison c;
  double sum_any = 0.0, sum_max = 0.0, sum_pairs = 0.0;
  for ( std::size_t i = 0; i < analytical.size(); ++i )
  {
    auto const& a = analytical[i];
    auto const& s = simulated[i];
    if ( a.site != s.site || a.per_output.size() != s.per_output.size() )
      throw std::invalid_argument( "analytical and simulated results cover different sites" );
    auto const chosen = mode == aggregation::any ? a.aggregate_any : a.aggregate_max;
    auto const diff = std::abs( chosen - s.any_output );
    double rel = 0.0;
    if ( s.any_output > 0.0 )
      rel = diff / s.any_output;
    else if ( diff > 0.0 )
      rel = std::numeric_limits<double>::infinity();
    c.rows.push_back( { a.site, a.aggregate_any, a.aggregate_max, s.any_output, diff, rel, s.method, s.vectors_used } );
    c.mean_abs_diff += diff;
    c.max_abs_diff = std::max( c.max_abs_diff, diff );
    sum_any += std::abs( a.aggregate_any - s.any_output );
    sum_max += std::abs( a.aggregate_max - s.any_output );
    for ( std::size_t k = 0; k < a.per_output.size(); ++k )
    {
      if ( a.per_output[k].output != s.per_output[k].output )
        throw std::invalid_argument( "analytical and simulated results cover different outputs" );
      auto const d = std::abs( a.per_output[k].epp - s.per_output[k].epp );
      sum_pairs += d;
      c.max_abs_diff_per_output = std::max( c.max_abs_diff_per_output, d );
      ++c.output_pairs;
    }
  }
  if ( !c.rows.empty() )
  {
    auto const n = static_cast<double>( c.rows.size() );
    c.mean_abs_diff /= n;
    c.mean_abs_diff_any = sum_any / n;
    c.mean_abs_diff_max = sum_max / n;
  }
  if ( c.output_pairs )
    c.mean_abs_diff_per_output = sum_pairs / static_cast<double>( c.output_pairs );
  return c;
}

/*! \brief Runs both routes on the configured sites and compares them. */
inline comparison run_comparison( netlist const& nl, run_config const& cfg )
{
  auto const r = detail::resolve( nl, cfg );
  if ( !detail::simulate_exhaustively( cfg ) && !cfg.vectors )
    throw usage_error( "compare needs --vectors when simulating by Monte Carlo" );
  auto const sp = compute_sp( nl, r.inputs, cfg.method, cfg.vectors.value_or( default_vectors ), cfg.seed, cfg.jobs );

  auto const t_epp = detail::clock::now();
  auto const reports = analyze_sites( nl, sp, r.sites, cfg.jobs );
  auto const epp_seconds = detail::seconds_since( t_epp );

  auto const t_sim = detail::clock::now();
  auto const sims = detail::run_simulation( nl, cfg, r );
  auto const sim_seconds = detail::seconds_since( t_sim );

  auto c = compare_epp( reports, sims, cfg.mode );
  c.epp_seconds = epp_seconds;
  c.simulation_seconds = sim_seconds;
  return c;
}

inline nlohmann::ordered_json summary_json( netlist const& nl, run_config const& cfg, comparison const& c )
{
  nlohmann::ordered_json j;
  j["circuit"] = nl.name();
  j["sp_method"] = std::string( to_string( cfg.method ) );
  j["sim_method"] = detail::simulate_exhaustively( cfg ) ? "exhaustive" : "montecarlo";
  j["aggregation_mode"] = std::string( to_string( cfg.mode ) );
  if ( detail::simulate_exhaustively( cfg ) )
    j["vectors"] = std::uint64_t{ 1 } << nl.pseudo_inputs().size();
  else
    j["vectors"] = *cfg.vectors;
  j["seed"] = cfg.seed;
  j["sites"] = c.rows.size();
  j["mean_abs_diff"] = c.mean_abs_diff;
  j["max_abs_diff"] = c.max_abs_diff;
  j["mean_abs_diff_any"] = c.mean_abs_diff_any;
  j["mean_abs_diff_max"] = c.mean_abs_diff_max;
  j["output_pairs"] = c.output_pairs;
  j["mean_abs_diff_per_output"] = c.mean_abs_diff_per_output;
  j["max_abs_diff_per_output"] = c.max_abs_diff_per_output;
  return j;
}

inline int cmd_compare( run_config const& cfg, std::ostream& out, std::ostream& err )
{
  auto const nl = detail::load_netlist( cfg, err );
  auto const c = run_comparison( nl, cfg );
  auto const summary = summary_json( nl, cfg, c );

  auto rel_text = []( double x ) { return std::isinf( x ) ? std::string( "inf" ) : format_number( x ); };
  std::ostringstream text;
  if ( cfg.format.value_or( output_format::csv ) == output_format::csv )
  {
    text << "site,epp_any,epp_max,sim_any,sim_method,vectors,abs_diff,rel_diff\n";
    for ( auto const& row : c.rows )
      text << nl.net_name( row.site ) << ',' << format_number( row.epp_any ) << ',' << format_number( row.epp_max )
           << ',' << format_number( row.sim_any ) << ',' << to_string( row.method ) << ',' << row.vectors << ','
           << format_number( row.abs_diff ) << ',' << rel_text( row.rel_diff ) << '\n';
    if ( !cfg.summary_path.empty() )
      detail::write_output( cfg.summary_path, summary.dump( 2 ) + "\n", out );
  }
  else
  {
    auto j = summary;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for ( auto const& row : c.rows )
    {
      nlohmann::ordered_json x;
      x["site"] = nl.net_name( row.site );
      x["epp_any"] = row.epp_any;
      x["epp_max"] = row.epp_max;
      x["sim_any"] = row.sim_any;
      x["abs_diff"] = row.abs_diff;
      x["rel_diff"] = std::isinf( row.rel_diff ) ? nlohmann::ordered_json( "inf" ) : nlohmann::ordered_json( row.rel_diff );
      rows.push_back( std::move( x ) );
    }
    text << j.dump( 2 ) << '\n';
    if ( !cfg.summary_path.empty() )
      detail::write_output( cfg.summary_path, summary.dump( 2 ) + "\n", out );
  }
  detail::write_output( cfg.out, text.str(), out );

  nlohmann::ordered_json timing;
  timing["command"] = "compare";
  timing["sites"] = c.rows.size();
  timing["epp_seconds"] = c.epp_seconds;
  timing["simulation_seconds"] = c.simulation_seconds;
  timing["speedup"] = c.epp_seconds > 0.0 ? c.simulation_seconds / c.epp_seconds : 0.0;
  detail::report_timing( cfg, err, timing );
  return exit_ok;
}

/*! \brief `sp`: per-net signal probability as CSV (net_name,sp) or JSON. */
inline int cmd_sp( run_config const& cfg, std::ostream& out, std::ostream& err )
{
  auto const nl = detail::load_netlist( cfg, err );
  auto const r = detail::resolve( nl, cfg );
  auto const sp = compute_sp( nl, r.inputs, cfg.method, cfg.vectors.value_or( default_vectors ), cfg.seed, cfg.jobs );
  std::ostringstream text;
  if ( cfg.format.value_or( output_format::csv ) == output_format::csv )
  {
    text << "net_name,sp\n";
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
      text << nl.net_name( make_net( i ) ) << ',' << format_number( sp.values[i] ) << '\n';
  }
  else
  {
    nlohmann::ordered_json j;
    j["circuit"] = nl.name();
    j["sp_method"] = std::string( to_string( sp.method ) );
    auto& nets = j["sp"] = nlohmann::ordered_json::object();
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
      nets[nl.net_name( make_net( i ) )] = sp.values[i];
    text << j.dump( 2 ) << '\n';
  }
  detail::write_output( cfg.out, text.str(), out );
  return exit_ok;
}

/*! \brief Parses arguments (argv[0] excluded) and runs the selected subcommand. */
inline int run( std::vector<std::string> const& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Soft error rate estimation by analytical error propagation probability" };
  app.name( "seprop" );
  app.require_subcommand( 1 );

  struct flags
  {
    std::string netlist, config, sp_method, sites, aggregation, out, format, timing, summary;
    std::uint64_t vectors = 0, seed = 0;
    unsigned jobs = 1;
    bool quiet = false;
    CLI::Option *o_sp = nullptr, *o_vectors = nullptr, *o_seed = nullptr, *o_sites = nullptr, *o_agg = nullptr,
                *o_format = nullptr, *o_jobs = nullptr;
  };
  std::map<std::string, flags> per_command;

  auto add = [&]( char const* name, char const* description ) {
    auto* sub = app.add_subcommand( name, description );
    auto& f = per_command[name];
    sub->add_option( "netlist", f.netlist, "BENCH netlist" )->required();
    sub->add_option( "--config", f.config, "JSON config file; flags override its values" );
    f.o_sp = sub->add_option( "--sp-method", f.sp_method, "independent (default), montecarlo or exact" );
    f.o_vectors = sub->add_option( "--vectors", f.vectors, "Monte Carlo vector count (default 10000; required for compare)" );
    f.o_seed = sub->add_option( "--seed", f.seed, "random seed (default 1)" );
    f.o_sites = sub->add_option( "--sites", f.sites, "comma-separated error sites (default: all nets)" );
    f.o_agg = sub->add_option( "--aggregation", f.aggregation, "any (default) or max" );
    sub->add_option( "--out", f.out, "output file (default: stdout)" );
    f.o_format = sub->add_option( "--format", f.format, "json or csv" );
    f.o_jobs = sub->add_option( "--jobs", f.jobs, "worker threads (default 1)" );
    sub->add_option( "--timing", f.timing, "write wall-clock timings as JSON to this file" );
    sub->add_flag( "-q,--quiet", f.quiet, "suppress warnings and timing on stderr" );
    return sub;
  };
  auto* analyze = add( "analyze", "analytical EPP and per-node SER report (default format json)" );
  auto* simulate = add( "simulate", "fault-injection EPP; exhaustive when --sp-method exact (default format csv)" );
  auto* compare = add( "compare", "analytical vs simulated EPP per site (default format csv)" );
  compare->add_option( "--summary", per_command["compare"].summary, "write the summary JSON to this file" );
  auto* sp = add( "sp", "per-net signal probability (default format csv)" );

  std::vector<char const*> argv{ "seprop" };
  for ( auto const& a : args )
    argv.push_back( a.c_str() );

  try
  {
    app.parse( static_cast<int>( argv.size() ), argv.data() );
  }
  catch ( CLI::CallForHelp const& )
  {
    out << app.help();
    return exit_ok;
  }
  catch ( CLI::CallForAllHelp const& )
  {
    out << app.help( "", CLI::AppFormatMode::All );
    return exit_ok;
  }
  catch ( CLI::ParseError const& e )
  {
    err << "error: " << e.what() << "\n" << "run 'seprop --help' for usage\n";
    return exit_usage;
  }

  CLI::App* chosen = nullptr;
  std::string command;
  for ( auto* sub : { analyze, simulate, compare, sp } )
    if ( sub->parsed() )
    {
      chosen = sub;
      command = sub->get_name();
    }
  auto const& f = per_command[command];

  try
  {
    run_config cfg;
    cfg.netlist_path = f.netlist;
    if ( !f.config.empty() )
      detail::apply_config_file( cfg, f.config );
    if ( f.o_sp->count() ) cfg.method = detail::parse_method( f.sp_method );
    if ( f.o_vectors->count() ) cfg.vectors = f.vectors;
    if ( f.o_seed->count() ) cfg.seed = f.seed;
    if ( f.o_sites->count() )
    {
      if ( f.sites == "all" )
        cfg.sites.reset();
      else
        cfg.sites = detail::split_list( f.sites );
    }
    if ( f.o_agg->count() ) cfg.mode = detail::parse_aggregation( f.aggregation );
    if ( f.o_format->count() ) cfg.format = detail::parse_format( f.format );
    if ( f.o_jobs->count() ) cfg.jobs = f.jobs;
    if ( cfg.jobs == 0 )
      throw usage_error( "--jobs must be at least 1" );
    cfg.out = f.out;
    cfg.timing_path = f.timing;
    cfg.summary_path = f.summary;
    cfg.quiet = f.quiet;

    if ( chosen == analyze ) return cmd_analyze( cfg, out, err );
    if ( chosen == simulate ) return cmd_simulate( cfg, out, err );
    if ( chosen == compare ) return cmd_compare( cfg, out, err );
    return cmd_sp( cfg, out, err );
  }
  catch ( usage_error const& e )
  {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  catch ( std::exception const& e )
  {
    err << "error: " << e.what() << "\n";
    return exit_runtime;
  }
}

} // namespace seprop::cli
