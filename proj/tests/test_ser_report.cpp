#include <catch2/catch_amalgamated.hpp>

#include <seprop/ser_report.hpp>

#include <sstream>

using namespace seprop;
using Catch::Approx;

namespace
{

netlist and_gate() { return parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nY = AND(A, B)", "and2" ); }

std::vector<epp_report> reports_for( netlist const& nl )
{
  return analyze_all( nl, sp_independent( nl, {} ) );
}

std::vector<std::string> split( std::string const& line )
{
  std::vector<std::string> out;
  std::stringstream ss( line );
  std::string cell;
  while ( std::getline( ss, cell, ',' ) )
    out.push_back( cell );
  return out;
}

} // namespace

TEST_CASE( "node SER is the product of its factors", "[ser]" )
{
  CHECK( node_ser( 1e-5, 0.8, 0.5 ) == Approx( 4e-6 ).epsilon( 1e-12 ) );
  CHECK( node_ser( 1.0, 1.0, 0.37 ) == 0.37 );
  CHECK( node_ser( 3.0, 0.5, 0.0 ) == 0.0 );
  CHECK_THROWS_AS( node_ser( -1.0, 0.5, 0.5 ), std::invalid_argument );
  CHECK_THROWS_AS( node_ser( 1.0, 1.5, 0.5 ), std::invalid_argument );
  CHECK_THROWS_AS( node_ser( 1.0, 0.5, -0.1 ), std::invalid_argument );
}

TEST_CASE( "circuit report", "[ser]" )
{
  auto const nl = and_gate();
  auto const epp = reports_for( nl );

  SECTION( "totals and ranking" )
  {
    ser_config cfg;
    cfg.default_r_seu = 2.0;
    cfg.p_latched[*nl.find( "B" )] = 0.5;
    auto const rep = build_report( nl, epp, cfg, coverage::complete, "independent" );
    REQUIRE( rep.rows.size() == 3 );
    CHECK( rep.rows[index( *nl.find( "A" ) )].ser == 1.0 );
    CHECK( rep.rows[index( *nl.find( "B" ) )].ser == 0.5 );
    CHECK( rep.rows[index( *nl.find( "Y" ) )].ser == 2.0 );
    CHECK( rep.total_ser == Approx( 3.5 ) );
    CHECK( rep.ranking == std::vector<net_id>{ *nl.find( "Y" ), *nl.find( "A" ), *nl.find( "B" ) } );
    CHECK( rep.circuit == "and2" );
  }
  SECTION( "scaling every upset rate scales the total" )
  {
    ser_config one, many;
    many.default_r_seu = 7.5;
    auto const a = build_report( nl, epp, one );
    auto const b = build_report( nl, epp, many );
    CHECK( b.total_ser == Approx( 7.5 * a.total_ser ) );
  }
  SECTION( "zero-rate nodes rank last" )
  {
    ser_config cfg;
    cfg.r_seu[*nl.find( "Y" )] = 0.0;
    auto const rep = build_report( nl, epp, cfg );
    CHECK( rep.ranking.back() == *nl.find( "Y" ) );
  }
  SECTION( "missing reports" )
  {
    std::vector<epp_report> some{ epp[index( *nl.find( "A" ) )] };
    CHECK_THROWS_AS( build_report( nl, some, {} ), std::invalid_argument );
    auto const rep = build_report( nl, some, {}, coverage::partial );
    CHECK( rep.rows[index( *nl.find( "A" ) )].analyzed );
    CHECK_FALSE( rep.rows[index( *nl.find( "Y" ) )].analyzed );
    CHECK( rep.ranking == std::vector<net_id>{ *nl.find( "A" ) } );
    CHECK( rep.total_ser == 0.5 );
  }
  SECTION( "aggregation mode selects the sensitization value" )
  {
    auto const two = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nOUTPUT(Z)\nY = AND(A, B)\nZ = OR(A, B)" );
    auto const r = reports_for( two );
    ser_config cfg;
    CHECK( build_report( two, r, cfg ).rows[0].p_sensitized == Approx( 0.75 ) );
    cfg.mode = aggregation::max;
    CHECK( build_report( two, r, cfg ).rows[0].p_sensitized == 0.5 );
  }
  SECTION( "invalid configuration" )
  {
    ser_config cfg;
    cfg.default_p_latched = 2.0;
    CHECK_THROWS_AS( build_report( nl, epp, cfg ), std::invalid_argument );
  }
}

TEST_CASE( "JSON and CSV carry the same numbers", "[ser]" )
{
  auto const nl = parse_bench( "INPUT(A)\nINPUT(B)\nINPUT(C)\nOUTPUT(Y)\nX = NAND(A, B)\nY = XOR(X, C)" );
  input_probabilities in;
  in.overrides[*nl.find( "A" )] = 0.3;
  in.overrides[*nl.find( "B" )] = 0.123456789;
  auto const epp = analyze_all( nl, sp_independent( nl, in ) );
  ser_config cfg;
  cfg.default_r_seu = 1.7e-5;
  cfg.default_p_latched = 0.9;
  auto const rep = build_report( nl, epp, cfg, coverage::complete, "independent" );

  std::ostringstream js, cs;
  write_json( js, nl, rep );
  write_csv( cs, nl, rep );
  auto const j = nlohmann::json::parse( js.str() );
  CHECK( j["sp_method"] == "independent" );
  CHECK( j["aggregation_mode"] == "any" );

  std::istringstream lines( cs.str() );
  std::string line;
  std::getline( lines, line );
  CHECK( line == "name,r_seu,p_latched,p_sensitized,ser,analyzed" );
  std::size_t row = 0;
  while ( std::getline( lines, line ) && line.rfind( "#", 0 ) != 0 )
  {
    auto const cells = split( line );
    REQUIRE( cells.size() == 6 );
    auto const& node = j["nodes"][row++];
    CHECK( cells[0] == node["name"].get<std::string>() );
    CHECK( std::stod( cells[3] ) == node["p_sensitized"].get<double>() );
    CHECK( std::stod( cells[4] ) == node["ser"].get<double>() );
    CHECK( cells[4] == node["ser"].dump() );
  }
  CHECK( row == nl.num_nets() );
  CHECK( line == "# total_ser," + j["total_ser"].dump() );
}
