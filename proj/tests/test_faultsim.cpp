#include <catch2/catch_amalgamated.hpp>

#include <seprop/faultsim.hpp>
#include <seprop/generators.hpp>

#include "support/oracles.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace seprop;
using Catch::Approx;

namespace
{

net_id id( netlist const& nl, char const* name ) { return *nl.find( name ); }

netlist load( std::string const& file )
{
  std::ifstream in( std::string( SEPROP_BENCHMARK_DIR ) + "/" + file );
  REQUIRE( in );
  return parse_bench( in, file );
}

double any_of( sim_epp_result const& r ) { return r.any_output; }

} // namespace

TEST_CASE( "scalar simulation", "[faultsim]" )
{
  auto const nl = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nOUTPUT(Z)\nY = AND(A, B)\nZ = NOR(A, B)" );
  auto const v = simulate_vector( nl, { 1, 1 } );
  CHECK( v[index( id( nl, "Y" ) )] == 1 );
  CHECK( v[index( id( nl, "Z" ) )] == 0 );
  CHECK_THROWS_AS( simulate_vector( nl, { 1 } ), std::invalid_argument );
  CHECK_THROWS_AS( simulate_vector( nl, { 1, 2 } ), std::invalid_argument );

  auto const pair = simulate_pair( nl, { 1, 0 }, id( nl, "B" ) );
  CHECK( pair.flipped_outputs == std::vector<net_id>{ id( nl, "Y" ) } );
  CHECK( pair.faulty[index( id( nl, "B" ) )] == 1 );
  CHECK( simulate_pair( nl, { 0, 0 }, id( nl, "B" ) ).flipped_outputs == std::vector<net_id>{ id( nl, "Z" ) } );
  CHECK_THROWS_AS( simulate_pair( nl, { 0, 0 }, make_net( 40 ) ), std::out_of_range );
}

TEST_CASE( "flip-flops split the circuit into one frame", "[faultsim]" )
{
  auto const nl = parse_bench( "INPUT(A)\nOUTPUT(Y)\nQ = DFF(D)\nD = XOR(A, Q)\nY = NOT(Q)\n" );
  // pseudo-input order: A then Q
  auto const pair = simulate_pair( nl, { 0, 1 }, id( nl, "Q" ) );
  auto expected = std::vector<net_id>{ id( nl, "Y" ), id( nl, "D" ) };
  std::sort( expected.begin(), expected.end() );
  CHECK( pair.flipped_outputs == expected );
  CHECK( pair.golden[index( id( nl, "D" ) )] == 1 );
}

TEST_CASE( "property: injecting the golden value changes nothing", "[faultsim]" )
{
  std::mt19937_64 rng( 7 );
  for ( int trial = 0; trial < 30; ++trial )
  {
    dag_options opt;
    opt.state_bits = trial % 3;
    auto const nl = parse_bench( random_dag_bench( rng, opt ) );
    input_vector v;
    for ( std::size_t k = 0; k < nl.pseudo_inputs().size(); ++k )
      v.push_back( static_cast<std::uint8_t>( rng() & 1u ) );
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
    {
      auto const r = simulate_pair( nl, v, make_net( i ), false );
      CHECK( r.flipped_outputs.empty() );
      CHECK( r.golden == r.faulty );
    }
  }
}

TEST_CASE( "Monte Carlo EPP", "[faultsim]" )
{
  SECTION( "XOR always propagates" )
  {
    auto const nl = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nY = XOR(A, B)" );
    auto const r = mc_epp( nl, id( nl, "A" ), {}, 1000, 5 );
    CHECK( r.any_output == 1.0 );
    CHECK( r.vectors_used == 1000 );
    CHECK( r.method == sim_method::montecarlo );
    REQUIRE( r.per_output.size() == 1 );
    CHECK( r.per_output[0].epp == 1.0 );
  }
  SECTION( "AND within the binomial bound" )
  {
    auto const nl = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nY = AND(A, B)" );
    CHECK( std::abs( mc_epp( nl, id( nl, "A" ), {}, 100000, 8 ).any_output - 0.5 ) < 0.01 );
  }
  SECTION( "deterministic in the seed and independent of jobs" )
  {
    std::mt19937_64 rng( 9 );
    dag_options opt;
    opt.gates = 120;
    opt.state_bits = 3;
    auto const nl = parse_bench( random_dag_bench( rng, opt ) );
    std::vector<net_id> sites;
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
      sites.push_back( make_net( i ) );
    auto const base = mc_epp_sites( nl, sites, {}, 3001, 77 );
    CHECK( base == mc_epp_sites( nl, sites, {}, 3001, 77 ) );
    CHECK( base == mc_epp_sites( nl, sites, {}, 3001, 77, 5 ) );
    for ( std::size_t i = 0; i < sites.size(); i += 17 )
      CHECK( base[i] == mc_epp( nl, sites[i], {}, 3001, 77, 2 ) );
  }
  SECTION( "argument checks" )
  {
    auto const nl = parse_bench( "INPUT(A)\nOUTPUT(A)" );
    CHECK_THROWS_AS( mc_epp( nl, id( nl, "A" ), {}, 0, 1 ), std::invalid_argument );
    CHECK_THROWS_AS( mc_epp( nl, make_net( 3 ), {}, 10, 1 ), std::out_of_range );
  }
}

TEST_CASE( "exhaustive EPP", "[faultsim]" )
{
  SECTION( "AND" )
  {
    auto const nl = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nY = AND(A, B)" );
    auto const r = exhaustive_epp( nl, id( nl, "A" ), {} );
    CHECK( r.any_output == 0.5 );
    CHECK( r.vectors_used == 4 );
    CHECK( r.method == sim_method::exhaustive );
  }
  SECTION( "reconvergent masking" )
  {
    auto const nl = parse_bench( "INPUT(S)\nOUTPUT(Y)\nN = NOT(S)\nY = AND(S, N)" );
    CHECK( exhaustive_epp( nl, id( nl, "S" ), {} ).any_output == 0.0 );
  }
  SECTION( "majority input" )
  {
    auto const nl = load( "majority.bench" );
    auto const site = nl.primary_inputs().front();
    auto const ref = oracle::brute_force_epp( nl, site, std::vector<double>( nl.pseudo_inputs().size(), 0.5 ) );
    CHECK( ref.any == Approx( 0.5 ).margin( 1e-12 ) );
    CHECK( exhaustive_epp( nl, site, {} ).any_output == Approx( ref.any ).margin( 1e-12 ) );
  }
  SECTION( "input bound" )
  {
    std::string text = "OUTPUT(Y)\n";
    std::string args;
    for ( int i = 0; i < 25; ++i )
    {
      text += "INPUT(I" + std::to_string( i ) + ")\n";
      args += ( i ? ", I" : "I" ) + std::to_string( i );
    }
    text += "Y = OR(" + args + ")\n";
    auto const nl = parse_bench( text );
    CHECK_THROWS_AS( exhaustive_epp( nl, id( nl, "Y" ), {} ), limit_error );
  }
}

TEST_CASE( "property: exhaustive simulation matches brute-force enumeration", "[faultsim]" )
{
  std::mt19937_64 rng( 61 );
  std::uniform_real_distribution<double> u( 0.0, 1.0 );
  for ( int trial = 0; trial < 30; ++trial )
  {
    dag_options opt;
    opt.primary_inputs = 1 + trial % 10;
    opt.state_bits = trial % 3;
    opt.gates = 15 + trial;
    auto const nl = parse_bench( random_dag_bench( rng, opt ) );
    std::vector<double> p;
    input_probabilities in;
    for ( auto n : nl.pseudo_inputs() )
    {
      // include some deterministic inputs so zero-weight words are exercised
      p.push_back( rng() % 4 == 0 ? static_cast<double>( rng() & 1u ) : u( rng ) );
      in.overrides[n] = p.back();
    }
    std::vector<net_id> sites;
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
      sites.push_back( make_net( i ) );
    auto const sims = exhaustive_epp_sites( nl, sites, in, 1 + trial % 3 );
    for ( auto const& s : sims )
    {
      auto const ref = oracle::brute_force_epp( nl, s.site, p );
      CHECK( s.any_output == Approx( ref.any ).margin( 1e-12 ) );
      for ( auto const& o : s.per_output )
        CHECK( o.epp == Approx( ref.per_output.at( o.output ) ).margin( 1e-12 ) );
    }
  }
}

TEST_CASE( "property: cone re-evaluation agrees with full re-simulation", "[faultsim]" )
{
  std::mt19937_64 rng( 67 );
  for ( int trial = 0; trial < 15; ++trial )
  {
    dag_options opt;
    opt.primary_inputs = 4 + trial % 5;
    opt.state_bits = trial % 2;
    opt.gates = 40;
    auto const nl = parse_bench( random_dag_bench( rng, opt ) );
    auto const width = nl.pseudo_inputs().size();
    // with every input pinned, Monte Carlo sees a single vector repeated
    for ( int sample = 0; sample < 8; ++sample )
    {
      input_vector v;
      input_probabilities in;
      for ( std::size_t k = 0; k < width; ++k )
      {
        v.push_back( static_cast<std::uint8_t>( rng() & 1u ) );
        in.overrides[nl.pseudo_inputs()[k]] = v.back();
      }
      for ( std::size_t i = 0; i < nl.num_nets(); ++i )
      {
        auto const site = make_net( i );
        auto const full = simulate_pair( nl, v, site );
        auto const fast = mc_epp( nl, site, in, 64, 1 );
        CHECK( any_of( fast ) == ( full.flipped_outputs.empty() ? 0.0 : 1.0 ) );
        for ( auto const& o : fast.per_output )
        {
          bool const flipped = std::find( full.flipped_outputs.begin(), full.flipped_outputs.end(), o.output ) !=
                               full.flipped_outputs.end();
          CHECK( o.epp == ( flipped ? 1.0 : 0.0 ) );
        }
      }
    }
  }
}
