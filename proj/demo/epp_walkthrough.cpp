/* Library walkthrough: parse a small netlist, compute signal probabilities,
   propagate an error from one site and compare against exhaustive simulation. */

#include <seprop/epp.hpp>
#include <seprop/faultsim.hpp>
#include <seprop/netlist.hpp>
#include <seprop/sigprob.hpp>

#include <cstdio>

int main()
{
  // S fans out to an inverter and a buffer that reconverge at an AND,
  // and also reaches Z through an AND with an independent input.
  auto const nl = seprop::parse_bench( R"(
INPUT(S)
INPUT(B)
OUTPUT(Y)
OUTPUT(Z)
X = NOT(S)
W = BUFF(S)
Y = AND(X, W)
Z = AND(S, B)
)",
                                       "walkthrough" );

  seprop::input_probabilities inputs;
  inputs.overrides[*nl.find( "B" )] = 0.7;
  auto const sp = seprop::sp_independent( nl, inputs );

  auto const site = *nl.find( "S" );
  auto const cone = seprop::fanout_cone( nl, site );
  auto const dists = seprop::propagate_from_site( nl, cone, sp );
  for ( auto const& [net, d] : dists )
    std::printf( "%-2s  P(a)=%.3f  P(a')=%.3f  P(1)=%.3f  P(0)=%.3f\n", nl.net_name( net ).c_str(), d.error,
                 d.inverted, d.one, d.zero );

  auto const analytical = seprop::analyze_site( nl, sp, site );
  auto const exact = seprop::exhaustive_epp( nl, site, inputs );
  for ( std::size_t k = 0; k < analytical.per_output.size(); ++k )
    std::printf( "EPP %s -> %s: analytical %.4f, exhaustive %.4f\n", nl.net_name( site ).c_str(),
                 nl.net_name( analytical.per_output[k].output ).c_str(), analytical.per_output[k].epp,
                 exact.per_output[k].epp );
  return 0;
}
