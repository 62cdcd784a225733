#include <catch2/catch_amalgamated.hpp>

#include <seprop/generators.hpp>
#include <seprop/sigprob.hpp>

#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace seprop;
using Catch::Approx;

namespace
{

net_id id( netlist const& nl, char const* name ) { return *nl.find( name ); }

input_probabilities with( netlist const& nl, std::initializer_list<std::pair<char const*, double>> values )
{
  input_probabilities in;
  for ( auto const& [name, p] : values )
    in.overrides[id( nl, name )] = p;
  return in;
}

} // namespace

TEST_CASE( "independent signal probability on single gates", "[sigprob]" )
{
  auto const and2 = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nY = AND(A, B)" );
  CHECK( sp_independent( and2, {} )[id( and2, "Y" )] == 0.25 );

  auto const inv = parse_bench( "INPUT(A)\nOUTPUT(Y)\nY = NOT(A)" );
  CHECK( sp_independent( inv, with( inv, { { "A", 0.3 } } ) )[id( inv, "Y" )] == Approx( 0.7 ) );

  auto const xor2 = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nY = XOR(A, B)" );
  CHECK( sp_independent( xor2, {} )[id( xor2, "Y" )] == 0.5 );

  auto const mixed = parse_bench( "INPUT(A)\nINPUT(B)\nINPUT(C)\nOUTPUT(N)\nOUTPUT(O)\nOUTPUT(X)\nOUTPUT(E)\n"
                                  "N = NAND(A, B, C)\nO = NOR(A, B)\nX = XNOR(A, B, C)\nE = BUFF(C)\n" );
  auto const sp = sp_independent( mixed, with( mixed, { { "A", 0.2 }, { "B", 0.6 }, { "C", 0.9 } } ) );
  CHECK( sp[id( mixed, "N" )] == Approx( 1.0 - 0.2 * 0.6 * 0.9 ) );
  CHECK( sp[id( mixed, "O" )] == Approx( 0.8 * 0.4 ) );
  CHECK( sp[id( mixed, "E" )] == Approx( 0.9 ) );
  double const ab = 0.2 * 0.4 + 0.6 * 0.8;
  CHECK( sp[id( mixed, "X" )] == Approx( 1.0 - ( ab * 0.1 + 0.9 * ( 1.0 - ab ) ) ) );
}

TEST_CASE( "state bits default separately from primary inputs", "[sigprob]" )
{
  auto const nl = parse_bench( "INPUT(A)\nOUTPUT(Y)\nQ = DFF(Y)\nY = AND(A, Q)\n" );
  input_probabilities in;
  in.default_primary = 0.5;
  in.default_state = 0.1;
  CHECK( sp_independent( nl, in )[id( nl, "Y" )] == Approx( 0.05 ) );
}

TEST_CASE( "input probability validation", "[sigprob]" )
{
  auto const nl = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nY = AND(A, B)" );
  CHECK_THROWS_AS( sp_independent( nl, with( nl, { { "A", 1.5 } } ) ), std::invalid_argument );
  CHECK_THROWS_AS( sp_independent( nl, with( nl, { { "Y", 0.5 } } ) ), std::invalid_argument );
  input_probabilities strict = with( nl, { { "A", 0.5 } } );
  strict.use_defaults = false;
  CHECK_THROWS_AS( sp_independent( nl, strict ), std::invalid_argument );
  strict.overrides[id( nl, "B" )] = 0.5;
  CHECK( sp_independent( nl, strict )[id( nl, "Y" )] == 0.25 );
}

TEST_CASE( "Monte Carlo signal probability", "[sigprob]" )
{
  SECTION( "degenerate input" )
  {
    auto const nl = parse_bench( "INPUT(A)\nOUTPUT(Y)\nY = BUFF(A)" );
    for ( std::uint64_t seed : { 0ull, 1ull, 99ull } )
      CHECK( sp_montecarlo( nl, with( nl, { { "A", 1.0 } } ), 1000, seed )[id( nl, "Y" )] == 1.0 );
  }
  SECTION( "AND within the binomial bound" )
  {
    // 3 sigma = 3 * sqrt(0.25 * 0.75 / 1e5) = 0.0041 < 0.01
    auto const nl = parse_bench( "INPUT(A)\nINPUT(B)\nOUTPUT(Y)\nY = AND(A, B)" );
    auto const sp = sp_montecarlo( nl, {}, 100000, 2024 );
    CHECK( std::abs( sp[id( nl, "Y" )] - 0.25 ) < 0.01 );
  }
  SECTION( "reproducible and independent of jobs" )
  {
    std::mt19937_64 rng( 5 );
    auto const nl = parse_bench( random_dag_bench( rng ) );
    auto const a = sp_montecarlo( nl, {}, 5000, 42 );
    CHECK( a.values == sp_montecarlo( nl, {}, 5000, 42 ).values );
    CHECK( a.values == sp_montecarlo( nl, {}, 5000, 42, 3 ).values );
    CHECK( a.values != sp_montecarlo( nl, {}, 5000, 43 ).values );
    CHECK( a.method == sp_method::montecarlo );
  }
  SECTION( "partial last word counts only requested vectors" )
  {
    auto const nl = parse_bench( "INPUT(A)\nOUTPUT(Y)\nY = NOT(A)" );
    auto const sp = sp_montecarlo( nl, with( nl, { { "A", 0.0 } } ), 70, 1 );
    CHECK( sp[id( nl, "Y" )] == 1.0 );
  }
  SECTION( "zero vectors rejected" )
  {
    auto const nl = parse_bench( "INPUT(A)\nOUTPUT(A)" );
    CHECK_THROWS_AS( sp_montecarlo( nl, {}, 0, 1 ), std::invalid_argument );
  }
}

TEST_CASE( "exact signal probability", "[sigprob]" )
{
  SECTION( "contradiction" )
  {
    auto const nl = parse_bench( "INPUT(A)\nOUTPUT(Y)\nN = NOT(A)\nY = AND(A, N)" );
    CHECK( sp_exact( nl, {} )[id( nl, "Y" )] == 0.0 );
    CHECK( sp_independent( nl, {} )[id( nl, "Y" )] == 0.25 );
  }
  SECTION( "idempotence" )
  {
    auto const nl = parse_bench( "INPUT(A)\nOUTPUT(Y)\nY = OR(A, A)" );
    CHECK( sp_exact( nl, with( nl, { { "A", 0.3 } } ) )[id( nl, "Y" )] == Approx( 0.3 ).margin( 1e-15 ) );
  }
  SECTION( "three-gate tree equals independent pass" )
  {
    auto const nl = parse_bench( "INPUT(A)\nINPUT(B)\nINPUT(C)\nINPUT(D)\nOUTPUT(Y)\n"
                                 "X = AND(A, B)\nZ = XOR(C, D)\nY = NOR(X, Z)\n" );
    auto const in = with( nl, { { "A", 0.1 }, { "B", 0.35 }, { "C", 0.8 }, { "D", 0.45 } } );
    auto const exact = sp_exact( nl, in );
    auto const indep = sp_independent( nl, in );
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
      CHECK( std::abs( exact.values[i] - indep.values[i] ) <= 1e-12 );
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
    text += "Y = AND(" + args + ")\n";
    auto const nl = parse_bench( text );
    CHECK_THROWS_AS( sp_exact( nl, {} ), limit_error );
  }
  SECTION( "property: matches enumeration oracle on random circuits" )
  {
    std::mt19937_64 rng( 17 );
    std::uniform_real_distribution<double> u( 0.0, 1.0 );
    for ( int trial = 0; trial < 30; ++trial )
    {
      dag_options opt;
      opt.primary_inputs = 2 + trial % 9;
      opt.state_bits = trial % 3;
      opt.gates = 15 + trial;
      auto const nl = parse_bench( random_dag_bench( rng, opt ) );
      input_probabilities in;
      std::vector<double> p;
      for ( auto n : nl.pseudo_inputs() )
      {
        p.push_back( u( rng ) );
        in.overrides[n] = p.back();
      }
      auto const exact = sp_exact( nl, in );
      auto const ref = oracle::signal_probability( nl, p );
      for ( std::size_t i = 0; i < nl.num_nets(); ++i )
        CHECK( exact.values[i] == Approx( ref[i] ).margin( 1e-12 ) );
    }
  }
}

TEST_CASE( "property: fanout-free circuits make the independent pass exact", "[sigprob]" )
{
  std::mt19937_64 rng( 23 );
  std::uniform_real_distribution<double> u( 0.0, 1.0 );
  for ( int trial = 0; trial < 60; ++trial )
  {
    auto const nl = parse_bench( random_fanout_free_bench( rng ) );
    REQUIRE( is_fanout_free( nl ) );
    input_probabilities in;
    for ( auto n : nl.pseudo_inputs() )
      in.overrides[n] = u( rng );
    auto const exact = sp_exact( nl, in );
    auto const indep = sp_independent( nl, in );
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
      CHECK( std::abs( exact.values[i] - indep.values[i] ) <= 1e-12 );
  }
}

TEST_CASE( "property: all methods agree on deterministic inputs", "[sigprob]" )
{
  std::mt19937_64 rng( 29 );
  for ( int trial = 0; trial < 30; ++trial )
  {
    dag_options opt;
    opt.primary_inputs = 3 + trial % 10;
    opt.state_bits = trial % 2;
    opt.gates = 20 + trial;
    auto const nl = parse_bench( random_dag_bench( rng, opt ) );
    input_probabilities in;
    for ( auto n : nl.pseudo_inputs() )
      in.overrides[n] = static_cast<double>( rng() & 1u );
    auto const exact = sp_exact( nl, in );
    CHECK( sp_independent( nl, in ).values == exact.values );
    CHECK( sp_montecarlo( nl, in, 100, rng() ).values == exact.values );
  }
}

TEST_CASE( "property: Monte Carlo stays within the binomial band", "[sigprob]" )
{
  std::mt19937_64 rng( 31 );
  std::size_t nets = 0, inside = 0;
  std::uint64_t const vectors = 20000;
  for ( int trial = 0; trial < 10; ++trial )
  {
    dag_options opt;
    opt.primary_inputs = 4 + trial % 6;
    opt.gates = 30;
    auto const nl = parse_bench( random_dag_bench( rng, opt ) );
    auto const exact = sp_exact( nl, {} );
    auto const mc = sp_montecarlo( nl, {}, vectors, 1000 + trial );
    for ( std::size_t i = 0; i < nl.num_nets(); ++i )
    {
      auto const p = exact.values[i];
      ++nets;
      inside += std::abs( mc.values[i] - p ) <= 3.0 * std::sqrt( p * ( 1.0 - p ) / vectors ) + 1e-12;
    }
  }
  // nets of one circuit share the same vectors, so misses come in clusters;
  // allow a little more than the nominal 0.27% outside the band
  CHECK( static_cast<double>( inside ) >= 0.97 * static_cast<double>( nets ) );
}
