/*!
  \file four_value.hpp
  \brief Four-valued error-propagation algebra over {a, a', 1, 0}

  A net inside the fan-out cone of an error site carries one of four
  symbols: `a` (the erroneous value, reached through an even number of
  inversions), `a'` (its complement, odd number of inversions), or a
  constant 1 or 0 (the error is blocked). A `four_value_dist` is a
  probability mass over those symbols.

  The two-input gate tables follow from reading `a` as an unknown Boolean
  and `a'` as its complement, e.g. a AND a' = 0 and a XOR a' = 1. That is
  what makes reconvergent branches of opposite polarity cancel correctly.
*/

#pragma once

#include "netlist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace seprop
{

enum class symbol : std::uint8_t
{
  a,
  a_bar,
  one,
  zero
};

struct four_value_dist
{
  double error = 0.0;    ///< P(a): error arrives with even inversion parity
  double inverted = 0.0; ///< P(a'): error arrives with odd inversion parity
  double one = 0.0;      ///< P(1): blocked at constant 1
  double zero = 0.0;     ///< P(0): blocked at constant 0

  constexpr double sum() const noexcept { return error + inverted + one + zero; }
  /* probability that the error is visible on this net */
  constexpr double error_probability() const noexcept { return error + inverted; }

  constexpr double operator[]( symbol s ) const noexcept
  {
    switch ( s )
    {
    case symbol::a: return error;
    case symbol::a_bar: return inverted;
    case symbol::one: return one;
    default: return zero;
    }
  }

  constexpr four_value_dist complemented() const noexcept { return { inverted, error, zero, one }; }

  friend constexpr bool operator==( four_value_dist const&, four_value_dist const& ) = default;
};

enum class polarity
{
  direct,
  inverted
};

/* the distribution injected at an error site */
constexpr four_value_dist seed_dist( polarity p = polarity::direct ) noexcept
{
  return p == polarity::direct ? four_value_dist{ 1.0, 0.0, 0.0, 0.0 } : four_value_dist{ 0.0, 1.0, 0.0, 0.0 };
}

/*! \brief Off-path net with signal probability `sp`: (0, 0, sp, 1 - sp). */
inline four_value_dist lift_off_path( double sp )
{
  if ( !( sp >= 0.0 && sp <= 1.0 ) )
    throw std::invalid_argument( "signal probability " + std::to_string( sp ) + " outside [0, 1]" );
  return { 0.0, 0.0, sp, 1.0 - sp };
}

namespace detail
{

enum class base_op
{
  conj,
  disj,
  parity
};

using symbol_table = std::array<std::array<symbol, 4>, 4>;

// rows/columns in symbol order a, a', 1, 0
inline constexpr symbol_table and_table = { {
    { symbol::a, symbol::zero, symbol::a, symbol::zero },
    { symbol::zero, symbol::a_bar, symbol::a_bar, symbol::zero },
    { symbol::a, symbol::a_bar, symbol::one, symbol::zero },
    { symbol::zero, symbol::zero, symbol::zero, symbol::zero },
} };

inline constexpr symbol_table or_table = { {
    { symbol::a, symbol::one, symbol::one, symbol::a },
    { symbol::one, symbol::a_bar, symbol::one, symbol::a_bar },
    { symbol::one, symbol::one, symbol::one, symbol::one },
    { symbol::a, symbol::a_bar, symbol::one, symbol::zero },
} };

inline constexpr symbol_table xor_table = { {
    { symbol::zero, symbol::one, symbol::a_bar, symbol::a },
    { symbol::one, symbol::zero, symbol::a, symbol::a_bar },
    { symbol::a_bar, symbol::a, symbol::zero, symbol::one },
    { symbol::a, symbol::a_bar, symbol::one, symbol::zero },
} };

constexpr symbol_table const& table_of( base_op op ) noexcept
{
  return op == base_op::conj ? and_table : op == base_op::disj ? or_table : xor_table;
}

constexpr base_op base_of( gate_kind kind ) noexcept
{
  switch ( kind )
  {
  case gate_kind::OR:
  case gate_kind::NOR: return base_op::disj;
  case gate_kind::XOR:
  case gate_kind::XNOR: return base_op::parity;
  default: return base_op::conj;
  }
}

/* joint distribution of two independent inputs pushed through a table */
template<base_op Op>
constexpr four_value_dist combine( four_value_dist const& x, four_value_dist const& y ) noexcept
{
  constexpr auto const& t = table_of( Op );
  std::array<double, 4> const xs{ x.error, x.inverted, x.one, x.zero };
  std::array<double, 4> const ys{ y.error, y.inverted, y.one, y.zero };
  std::array<double, 4> out{};
  for ( std::size_t i = 0; i < 4; ++i )
    for ( std::size_t j = 0; j < 4; ++j )
      out[static_cast<std::size_t>( t[i][j] )] += xs[i] * ys[j];
  return { std::min( out[0], 1.0 ), std::min( out[1], 1.0 ), std::min( out[2], 1.0 ), std::min( out[3], 1.0 ) };
}

/*! \brief Folds fan-in distributions left to right; `at(k)` yields input k. No validation. */
template<typename Inputs>
constexpr four_value_dist fold_gate( gate_kind kind, std::size_t count, Inputs&& at ) noexcept
{
  four_value_dist acc = at( 0 );
  switch ( base_of( kind ) )
  {
  case base_op::conj:
    for ( std::size_t k = 1; k < count; ++k )
      acc = combine<base_op::conj>( acc, at( k ) );
    break;
  case base_op::disj:
    for ( std::size_t k = 1; k < count; ++k )
      acc = combine<base_op::disj>( acc, at( k ) );
    break;
  case base_op::parity:
    for ( std::size_t k = 1; k < count; ++k )
      acc = combine<base_op::parity>( acc, at( k ) );
    break;
  }
  return is_inverting( kind ) ? acc.complemented() : acc;
}

} // namespace detail

/* tolerance on the total mass of a distribution passed to gate_rule */
inline constexpr double normalization_tolerance = 1e-9;

/*! \brief Output distribution of a gate whose inputs carry independent distributions.

  Accepts the combinational gate kinds (BUFF, NOT and the two-or-more
  input kinds). Throws `std::invalid_argument` on an arity mismatch or an
  input that is not a normalized distribution.
*/
inline four_value_dist gate_rule( gate_kind kind, std::span<four_value_dist const> inputs )
{
  if ( kind == gate_kind::INPUT || kind == gate_kind::DFF )
    throw std::invalid_argument( std::string( to_string( kind ) ) + " is not a combinational gate" );
  if ( inputs.empty() || !arity_ok( kind, inputs.size() ) )
    throw std::invalid_argument( std::string( to_string( kind ) ) + " cannot take " + std::to_string( inputs.size() ) +
                                 " input(s)" );
  for ( auto const& d : inputs )
  {
    bool const in_range = d.error >= 0.0 && d.inverted >= 0.0 && d.one >= 0.0 && d.zero >= 0.0;
    if ( !in_range || !( std::abs( d.sum() - 1.0 ) <= normalization_tolerance ) )
      throw std::invalid_argument( "gate input is not a normalized distribution (sum " + std::to_string( d.sum() ) +
                                   ")" );
  }
  return detail::fold_gate( kind, inputs.size(), [&]( std::size_t k ) { return inputs[k]; } );
}

} // namespace seprop
