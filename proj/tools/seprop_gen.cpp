/* Writes a random BENCH circuit to stdout; used to produce the committed benchmark corpus. */

#include <seprop/generators.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <random>

int main( int argc, char** argv )
{
  CLI::App app{ "random BENCH circuit generator" };
  std::string shape = "dag";
  std::uint64_t seed = 1;
  seprop::dag_options dag;
  seprop::fanout_free_options tree;
  app.add_option( "--shape", shape, "dag or tree" )->check( CLI::IsMember( { "dag", "tree" } ) );
  app.add_option( "--seed", seed, "generator seed" );
  app.add_option( "--inputs", dag.primary_inputs, "primary inputs (dag)" );
  app.add_option( "--state", dag.state_bits, "flip-flops (dag)" );
  app.add_option( "--gates", dag.gates, "gate count (dag)" );
  app.add_option( "--window", dag.window, "fan-in locality window (dag)" );
  app.add_option( "--max-inputs", tree.max_pseudo_inputs, "pseudo-input bound (tree)" );
  app.add_option( "--max-depth", tree.max_depth, "depth bound (tree)" );
  CLI11_PARSE( app, argc, argv );

  std::mt19937_64 rng( seed );
  std::cout << ( shape == "dag" ? seprop::random_dag_bench( rng, dag ) : seprop::random_fanout_free_bench( rng, tree ) );
  return 0;
}
