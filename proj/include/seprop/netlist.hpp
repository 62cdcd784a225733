/*!
  \file netlist.hpp
  \brief Gate-level circuit graph, BENCH reader/writer and cone extraction

  Nets are dense integer ids assigned in definition order. Every net has
  exactly one driver: an INPUT declaration or a gate. Flip-flops cut the
  graph: a DFF output is a pseudo-primary input and a DFF data input is a
  capture point, so the remaining combinational graph is a DAG.
*/

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace seprop
{

enum class gate_kind : std::uint8_t
{
  INPUT,
  BUFF,
  NOT,
  AND,
  NAND,
  OR,
  NOR,
  XOR,
  XNOR,
  DFF
};

constexpr std::string_view to_string( gate_kind kind ) noexcept
{
  switch ( kind )
  {
  case gate_kind::INPUT: return "INPUT";
  case gate_kind::BUFF: return "BUFF";
  case gate_kind::NOT: return "NOT";
  case gate_kind::AND: return "AND";
  case gate_kind::NAND: return "NAND";
  case gate_kind::OR: return "OR";
  case gate_kind::NOR: return "NOR";
  case gate_kind::XOR: return "XOR";
  case gate_kind::XNOR: return "XNOR";
  case gate_kind::DFF: return "DFF";
  }
  return "?";
}

/* true for NOT, NAND, NOR, XNOR */
constexpr bool is_inverting( gate_kind kind ) noexcept
{
  return kind == gate_kind::NOT || kind == gate_kind::NAND || kind == gate_kind::NOR || kind == gate_kind::XNOR;
}

constexpr bool arity_ok( gate_kind kind, std::size_t fanin ) noexcept
{
  switch ( kind )
  {
  case gate_kind::INPUT: return fanin == 0;
  case gate_kind::BUFF:
  case gate_kind::NOT:
  case gate_kind::DFF: return fanin == 1;
  default: return fanin >= 2;
  }
}

/*! \brief Dense net index, contiguous from 0 to num_nets() - 1. */
enum class net_id : std::uint32_t
{
};

constexpr std::uint32_t index( net_id n ) noexcept { return static_cast<std::uint32_t>( n ); }
constexpr net_id make_net( std::size_t i ) noexcept { return static_cast<net_id>( static_cast<std::uint32_t>( i ) ); }

enum class parse_errc
{
  syntax,
  undefined_signal,
  multiple_drivers,
  cycle,
  unsupported_gate,
  no_capture_point
};

constexpr std::string_view to_string( parse_errc code ) noexcept
{
  switch ( code )
  {
  case parse_errc::syntax: return "syntax error";
  case parse_errc::undefined_signal: return "undefined signal";
  case parse_errc::multiple_drivers: return "multiply-driven net";
  case parse_errc::cycle: return "combinational cycle";
  case parse_errc::unsupported_gate: return "unsupported gate";
  case parse_errc::no_capture_point: return "no capture point";
  }
  return "error";
}

class parse_error : public std::runtime_error
{
public:
  parse_error( parse_errc code, std::size_t line, std::size_t column, std::string const& what )
      : std::runtime_error( std::to_string( line ) + ":" + std::to_string( column ) + ": " +
                            std::string( to_string( code ) ) + ": " + what ),
        code_( code ), line_( line ), column_( column )
  {
  }

  parse_errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  parse_errc code_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail
{
class bench_reader;
}

/*! \brief Immutable gate-level netlist.

  Fan-in lists are stored in one contiguous array (CSR layout); the fan-out
  lists only contain combinational consumers, i.e. edges into DFFs are cut.
*/
class netlist
{
public:
  std::string const& name() const noexcept { return name_; }
  std::size_t num_nets() const noexcept { return kinds_.size(); }

  gate_kind kind( net_id n ) const { return kinds_.at( index( n ) ); }
  std::string const& net_name( net_id n ) const { return names_.at( index( n ) ); }

  std::span<net_id const> fanins( net_id n ) const
  {
    auto const i = check( n );
    return { fanin_data_.data() + fanin_offset_[i], fanin_offset_[i + 1] - fanin_offset_[i] };
  }

  /* combinational consumers of n (DFF inputs excluded) */
  std::span<net_id const> fanouts( net_id n ) const
  {
    auto const i = check( n );
    return { fanout_data_.data() + fanout_offset_[i], fanout_offset_[i + 1] - fanout_offset_[i] };
  }

  std::optional<net_id> find( std::string_view name ) const
  {
    if ( auto it = by_name_.find( std::string( name ) ); it != by_name_.end() )
      return it->second;
    return std::nullopt;
  }

  bool contains( net_id n ) const noexcept { return index( n ) < num_nets(); }

  /* declaration order */
  std::span<net_id const> primary_inputs() const noexcept { return pis_; }
  std::span<net_id const> primary_outputs() const noexcept { return pos_; }
  /* nets feeding DFFs, in DFF definition order */
  std::span<net_id const> ff_inputs() const noexcept { return ff_ins_; }
  std::span<net_id const> ff_outputs() const noexcept { return ff_outs_; }

  /* primary inputs followed by DFF outputs; the order used by input vectors */
  std::span<net_id const> pseudo_inputs() const noexcept { return pseudo_inputs_; }
  /* primary outputs and DFF inputs, ascending id, without duplicates */
  std::span<net_id const> capture_points() const noexcept { return captures_; }

  bool is_pseudo_input( net_id n ) const { return pseudo_pos_.at( index( n ) ) >= 0; }
  /* position of n in pseudo_inputs(), or -1 */
  std::int32_t pseudo_input_position( net_id n ) const { return pseudo_pos_.at( index( n ) ); }
  bool is_capture_point( net_id n ) const { return is_capture_.at( index( n ) ) != 0; }
  bool is_primary_output( net_id n ) const { return is_po_.at( index( n ) ) != 0; }

  /*! \brief Topological order: pseudo-inputs first (ascending id), then gates. */
  std::span<net_id const> topo_order() const noexcept { return topo_; }
  std::uint32_t topo_position( net_id n ) const { return topo_pos_.at( index( n ) ); }
  /* topo_order() without the pseudo-inputs */
  std::span<net_id const> evaluation_order() const noexcept
  {
    return std::span<net_id const>( topo_ ).subspan( pseudo_inputs_.size() );
  }

  std::vector<std::string> const& warnings() const noexcept { return warnings_; }

private:
  friend class detail::bench_reader;
  netlist() = default;

  std::uint32_t check( net_id n ) const
  {
    if ( index( n ) >= num_nets() )
      throw std::out_of_range( "unknown net id " + std::to_string( index( n ) ) );
    return index( n );
  }

  std::string name_;
  std::vector<gate_kind> kinds_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, net_id> by_name_;
  std::vector<std::uint32_t> fanin_offset_;
  std::vector<net_id> fanin_data_;
  std::vector<std::uint32_t> fanout_offset_;
  std::vector<net_id> fanout_data_;
  std::vector<net_id> pis_, pos_, ff_ins_, ff_outs_, pseudo_inputs_, captures_;
  std::vector<std::int32_t> pseudo_pos_;
  std::vector<std::uint8_t> is_capture_, is_po_;
  std::vector<net_id> topo_;
  std::vector<std::uint32_t> topo_pos_;
  std::vector<std::string> warnings_;
};

namespace detail
{

class bench_reader
{
  struct location
  {
    std::size_t line = 0, column = 0;
  };

  struct token
  {
    enum class type
    {
      ident,
      lparen,
      rparen,
      comma,
      equal
    } kind;
    std::string text;
    std::size_t column;
  };

  struct definition
  {
    std::string name;
    gate_kind kind;
    std::vector<std::pair<std::string, location>> fanins;
    location where;
  };

public:
  netlist read( std::istream& in, std::string name )
  {
    std::string line;
    std::size_t line_no = 0;
    while ( std::getline( in, line ) )
    {
      ++line_no;
      parse_line( line, line_no );
    }
    return build( std::move( name ) );
  }

private:
  static bool is_ident_char( char c )
  {
    return !std::isspace( static_cast<unsigned char>( c ) ) && c != '(' && c != ')' && c != ',' && c != '=' &&
           c != '#';
  }

  static std::string upper( std::string_view s )
  {
    std::string r( s );
    std::transform( r.begin(), r.end(), r.begin(), []( unsigned char c ) { return static_cast<char>( std::toupper( c ) ); } );
    return r;
  }

  static std::optional<gate_kind> gate_keyword( std::string_view word )
  {
    auto const w = upper( word );
    if ( w == "AND" ) return gate_kind::AND;
    if ( w == "NAND" ) return gate_kind::NAND;
    if ( w == "OR" ) return gate_kind::OR;
    if ( w == "NOR" ) return gate_kind::NOR;
    if ( w == "XOR" ) return gate_kind::XOR;
    if ( w == "XNOR" ) return gate_kind::XNOR;
    if ( w == "NOT" ) return gate_kind::NOT;
    if ( w == "BUFF" || w == "BUF" ) return gate_kind::BUFF;
    if ( w == "DFF" ) return gate_kind::DFF;
    return std::nullopt;
  }

  [[noreturn]] static void fail( parse_errc code, std::size_t line, std::size_t column, std::string const& what )
  {
    throw parse_error( code, line, column, what );
  }

  std::vector<token> tokenize( std::string_view text, std::size_t line_no ) const
  {
    std::vector<token> tokens;
    std::size_t i = 0;
    while ( i < text.size() )
    {
      char const c = text[i];
      if ( c == '#' )
        break;
      if ( std::isspace( static_cast<unsigned char>( c ) ) )
      {
        ++i;
        continue;
      }
      auto const col = i + 1;
      switch ( c )
      {
      case '(': tokens.push_back( { token::type::lparen, "(", col } ); ++i; continue;
      case ')': tokens.push_back( { token::type::rparen, ")", col } ); ++i; continue;
      case ',': tokens.push_back( { token::type::comma, ",", col } ); ++i; continue;
      case '=': tokens.push_back( { token::type::equal, "=", col } ); ++i; continue;
      default: break;
      }
      auto j = i;
      while ( j < text.size() && is_ident_char( text[j] ) )
        ++j;
      if ( j == i )
        fail( parse_errc::syntax, line_no, col, std::string( "unexpected character '" ) + c + "'" );
      tokens.push_back( { token::type::ident, std::string( text.substr( i, j - i ) ), col } );
      i = j;
    }
    return tokens;
  }

  void parse_line( std::string_view text, std::size_t line_no )
  {
    auto const tokens = tokenize( text, line_no );
    if ( tokens.empty() )
      return;

    std::size_t pos = 0;
    auto const end_column = text.size() + 1;
    auto expect = [&]( token::type type, char const* what ) -> token const& {
      if ( pos >= tokens.size() )
        fail( parse_errc::syntax, line_no, end_column, std::string( "expected " ) + what + " before end of line" );
      if ( tokens[pos].kind != type )
        fail( parse_errc::syntax, line_no, tokens[pos].column,
              std::string( "expected " ) + what + ", found '" + tokens[pos].text + "'" );
      return tokens[pos++];
    };

    auto const& head = expect( token::type::ident, "identifier" );

    if ( pos < tokens.size() && tokens[pos].kind == token::type::equal )
    {
      ++pos;
      auto const& kw = expect( token::type::ident, "gate type" );
      auto const kind = gate_keyword( kw.text );
      if ( !kind )
        fail( parse_errc::unsupported_gate, line_no, kw.column, "unsupported gate type '" + kw.text + "'" );
      expect( token::type::lparen, "'('" );
      definition def{ head.text, *kind, {}, { line_no, head.column } };
      if ( pos < tokens.size() && tokens[pos].kind == token::type::rparen )
      {
        ++pos;
      }
      else
      {
        while ( true )
        {
          auto const& arg = expect( token::type::ident, "signal name" );
          def.fanins.emplace_back( arg.text, location{ line_no, arg.column } );
          if ( pos < tokens.size() && tokens[pos].kind == token::type::comma )
          {
            ++pos;
            continue;
          }
          expect( token::type::rparen, "',' or ')'" );
          break;
        }
      }
      if ( pos != tokens.size() )
        fail( parse_errc::syntax, line_no, tokens[pos].column, "trailing '" + tokens[pos].text + "'" );
      if ( !arity_ok( *kind, def.fanins.size() ) )
        fail( parse_errc::syntax, line_no, kw.column,
              std::string( to_string( *kind ) ) + " cannot take " + std::to_string( def.fanins.size() ) +
                  " input(s)" );
      defs_.push_back( std::move( def ) );
      return;
    }

    auto const kw = upper( head.text );
    if ( kw != "INPUT" && kw != "OUTPUT" )
      fail( parse_errc::syntax, line_no, head.column, "expected INPUT, OUTPUT or an assignment, found '" + head.text + "'" );
    expect( token::type::lparen, "'('" );
    auto const& arg = expect( token::type::ident, "signal name" );
    expect( token::type::rparen, "')'" );
    if ( pos != tokens.size() )
      fail( parse_errc::syntax, line_no, tokens[pos].column, "trailing '" + tokens[pos].text + "'" );

    if ( kw == "INPUT" )
      defs_.push_back( { arg.text, gate_kind::INPUT, {}, { line_no, arg.column } } );
    else
      outputs_.emplace_back( arg.text, location{ line_no, arg.column } );
  }

  netlist build( std::string name )
  {
    netlist nl;
    nl.name_ = std::move( name );
    auto const n = defs_.size();

    std::vector<location> where( n );
    for ( std::size_t i = 0; i < n; ++i )
    {
      auto const& d = defs_[i];
      auto [it, fresh] = nl.by_name_.emplace( d.name, make_net( i ) );
      if ( !fresh )
      {
        auto const& first = where[index( it->second )];
        fail( parse_errc::multiple_drivers, d.where.line, d.where.column,
              "net '" + d.name + "' already driven (first defined at line " + std::to_string( first.line ) + ")" );
      }
      where[i] = d.where;
      nl.kinds_.push_back( d.kind );
      nl.names_.push_back( d.name );
    }

    auto resolve = [&]( std::string const& ref, location loc ) {
      auto it = nl.by_name_.find( ref );
      if ( it == nl.by_name_.end() )
        fail( parse_errc::undefined_signal, loc.line, loc.column, "signal '" + ref + "' is never defined" );
      return it->second;
    };

    nl.fanin_offset_.reserve( n + 1 );
    nl.fanin_offset_.push_back( 0 );
    std::vector<std::uint32_t> fanout_count( n, 0 );
    std::vector<std::uint8_t> consumed( n, 0 );
    nl.is_capture_.assign( n, 0 );
    nl.is_po_.assign( n, 0 );
    for ( std::size_t i = 0; i < n; ++i )
    {
      auto const& d = defs_[i];
      for ( auto const& [ref, loc] : d.fanins )
      {
        auto const f = resolve( ref, loc );
        nl.fanin_data_.push_back( f );
        consumed[index( f )] = 1;
        if ( d.kind != gate_kind::DFF )
          ++fanout_count[index( f )];
      }
      nl.fanin_offset_.push_back( static_cast<std::uint32_t>( nl.fanin_data_.size() ) );

      if ( d.kind == gate_kind::INPUT )
        nl.pis_.push_back( make_net( i ) );
      else if ( d.kind == gate_kind::DFF )
      {
        nl.ff_outs_.push_back( make_net( i ) );
        auto const din = nl.fanin_data_.back();
        if ( !nl.is_capture_[index( din )] )
          nl.ff_ins_.push_back( din );
        nl.is_capture_[index( din )] = 1;
      }
    }
    // a net can feed several DFFs; keep ff_ins_ free of duplicates even when it is also a PO
    for ( auto const& [ref, loc] : outputs_ )
    {
      auto const o = resolve( ref, loc );
      if ( nl.is_po_[index( o )] )
        continue;
      nl.is_po_[index( o )] = 1;
      nl.is_capture_[index( o )] = 1;
      nl.pos_.push_back( o );
    }
    for ( std::size_t i = 0; i < n; ++i )
      if ( nl.is_capture_[i] )
        nl.captures_.push_back( make_net( i ) );
    if ( nl.captures_.empty() )
      fail( parse_errc::no_capture_point, 1, 1, "netlist has neither primary outputs nor flip-flops" );

    nl.pseudo_inputs_ = nl.pis_;
    nl.pseudo_inputs_.insert( nl.pseudo_inputs_.end(), nl.ff_outs_.begin(), nl.ff_outs_.end() );
    nl.pseudo_pos_.assign( n, -1 );
    for ( std::size_t k = 0; k < nl.pseudo_inputs_.size(); ++k )
      nl.pseudo_pos_[index( nl.pseudo_inputs_[k] )] = static_cast<std::int32_t>( k );

    nl.fanout_offset_.assign( n + 1, 0 );
    for ( std::size_t i = 0; i < n; ++i )
      nl.fanout_offset_[i + 1] = nl.fanout_offset_[i] + fanout_count[i];
    nl.fanout_data_.resize( nl.fanout_offset_[n] );
    {
      auto fill = nl.fanout_offset_;
      for ( std::size_t i = 0; i < n; ++i )
      {
        if ( nl.kinds_[i] == gate_kind::DFF )
          continue;
        for ( auto k = nl.fanin_offset_[i]; k < nl.fanin_offset_[i + 1]; ++k )
          nl.fanout_data_[fill[index( nl.fanin_data_[k] )]++] = make_net( i );
      }
    }

    sort_topologically( nl, where );

    for ( std::size_t i = 0; i < n; ++i )
      if ( !consumed[i] && !nl.is_capture_[i] )
        nl.warnings_.push_back( "line " + std::to_string( where[i].line ) + ": net '" + nl.names_[i] +
                                "' drives nothing and is not an output" );
    return nl;
  }

  /* Kahn's algorithm seeded with all sources in ascending id order */
  static void sort_topologically( netlist& nl, std::vector<location> const& where )
  {
    auto const n = nl.num_nets();
    std::vector<std::uint32_t> pending( n, 0 );
    for ( std::size_t i = 0; i < n; ++i )
      if ( nl.kinds_[i] != gate_kind::DFF )
        pending[i] = nl.fanin_offset_[i + 1] - nl.fanin_offset_[i];

    std::deque<std::uint32_t> ready;
    for ( std::uint32_t i = 0; i < n; ++i )
      if ( pending[i] == 0 )
        ready.push_back( i );

    nl.topo_.reserve( n );
    while ( !ready.empty() )
    {
      auto const i = ready.front();
      ready.pop_front();
      nl.topo_.push_back( make_net( i ) );
      for ( auto k = nl.fanout_offset_[i]; k < nl.fanout_offset_[i + 1]; ++k )
        if ( --pending[index( nl.fanout_data_[k] )] == 0 )
          ready.push_back( index( nl.fanout_data_[k] ) );
    }

    if ( nl.topo_.size() != n )
    {
      // walk backwards through unfinished gates until a net repeats
      std::uint32_t cur = 0;
      while ( pending[cur] == 0 )
        ++cur;
      std::vector<std::int32_t> seen_at( n, -1 );
      std::vector<std::uint32_t> walk;
      while ( seen_at[cur] < 0 )
      {
        seen_at[cur] = static_cast<std::int32_t>( walk.size() );
        walk.push_back( cur );
        for ( auto k = nl.fanin_offset_[cur]; k < nl.fanin_offset_[cur + 1]; ++k )
        {
          auto const f = index( nl.fanin_data_[k] );
          if ( pending[f] != 0 )
          {
            cur = f;
            break;
          }
        }
      }
      std::string path;
      for ( auto k = static_cast<std::size_t>( seen_at[cur] ); k < walk.size(); ++k )
        path += nl.names_[walk[k]] + " <- ";
      path += nl.names_[cur];
      auto const& loc = where[cur];
      fail( parse_errc::cycle, loc.line, loc.column, "combinational loop " + path );
    }

    nl.topo_pos_.assign( n, 0 );
    for ( std::uint32_t k = 0; k < n; ++k )
      nl.topo_pos_[index( nl.topo_[k] )] = k;
  }

  std::vector<definition> defs_;
  std::vector<std::pair<std::string, location>> outputs_;
};

} // namespace detail

/*! \brief Parses a BENCH netlist.

  Accepts `INPUT(x)`, `OUTPUT(x)` and `x = KIND(a, b, ...)` lines, `#`
  comments, case-insensitive keywords and arbitrary whitespace. Throws
  `parse_error` carrying line and column.
*/
inline netlist parse_bench( std::istream& in, std::string name = "circuit" )
{
  return detail::bench_reader{}.read( in, std::move( name ) );
}

inline netlist parse_bench( std::string_view text, std::string name = "circuit" )
{
  std::istringstream in{ std::string( text ) };
  return parse_bench( in, std::move( name ) );
}

/*! \brief Writes BENCH text that parses back to the same structure. */
inline void emit_bench( std::ostream& os, netlist const& nl )
{
  os << "# " << nl.name() << "\n";
  for ( auto pi : nl.primary_inputs() )
    os << "INPUT(" << nl.net_name( pi ) << ")\n";
  for ( auto po : nl.primary_outputs() )
    os << "OUTPUT(" << nl.net_name( po ) << ")\n";
  for ( std::size_t i = 0; i < nl.num_nets(); ++i )
  {
    auto const n = make_net( i );
    if ( nl.kind( n ) == gate_kind::INPUT )
      continue;
    os << nl.net_name( n ) << " = " << to_string( nl.kind( n ) ) << "(";
    auto const fi = nl.fanins( n );
    for ( std::size_t k = 0; k < fi.size(); ++k )
      os << ( k ? ", " : "" ) << nl.net_name( fi[k] );
    os << ")\n";
  }
}

inline std::string emit_bench( netlist const& nl )
{
  std::ostringstream os;
  emit_bench( os, nl );
  return os.str();
}

/*! \brief Same nets, gate kinds, fan-ins (by name) and PI/PO order; ids and circuit name may differ. */
inline bool structurally_equal( netlist const& a, netlist const& b )
{
  if ( a.num_nets() != b.num_nets() )
    return false;
  auto names = []( netlist const& nl, std::span<net_id const> ids ) {
    std::vector<std::string> r;
    for ( auto n : ids )
      r.push_back( nl.net_name( n ) );
    return r;
  };
  if ( names( a, a.primary_inputs() ) != names( b, b.primary_inputs() ) ||
       names( a, a.primary_outputs() ) != names( b, b.primary_outputs() ) )
    return false;
  for ( std::size_t i = 0; i < a.num_nets(); ++i )
  {
    auto const na = make_net( i );
    auto const nb = b.find( a.net_name( na ) );
    if ( !nb || a.kind( na ) != b.kind( *nb ) )
      return false;
    if ( names( a, a.fanins( na ) ) != names( b, b.fanins( *nb ) ) )
      return false;
  }
  return true;
}

inline std::span<net_id const> topo_order( netlist const& nl ) noexcept
{
  return nl.topo_order();
}

/*! \brief Forward cone of an error site.

  `on_path_nets` and `on_path_gates` are in topological order; the other
  two lists are in ascending id order.
*/
struct cone_info
{
  net_id site;
  std::vector<net_id> on_path_nets;
  std::vector<net_id> on_path_gates;
  std::vector<net_id> off_path_nets;
  std::vector<net_id> reachable_outputs;
};

inline cone_info fanout_cone( netlist const& nl, net_id site )
{
  if ( !nl.contains( site ) )
    throw std::out_of_range( "unknown net id " + std::to_string( index( site ) ) );

  cone_info cone{ site, {}, {}, {}, {} };
  std::vector<std::uint8_t> mark( nl.num_nets(), 0 );
  mark[index( site )] = 1;
  cone.on_path_nets.push_back( site );
  for ( std::size_t head = 0; head < cone.on_path_nets.size(); ++head )
    for ( auto f : nl.fanouts( cone.on_path_nets[head] ) )
      if ( !mark[index( f )] )
      {
        mark[index( f )] = 1;
        cone.on_path_nets.push_back( f );
      }
  std::sort( cone.on_path_nets.begin(), cone.on_path_nets.end(),
             [&]( net_id x, net_id y ) { return nl.topo_position( x ) < nl.topo_position( y ); } );

  std::vector<std::uint8_t> off( nl.num_nets(), 0 );
  for ( auto n : cone.on_path_nets )
  {
    if ( nl.is_capture_point( n ) )
      cone.reachable_outputs.push_back( n );
    if ( n == site )
      continue;
    cone.on_path_gates.push_back( n );
    for ( auto f : nl.fanins( n ) )
      if ( !mark[index( f )] )
        off[index( f )] = 1;
  }
  for ( std::size_t i = 0; i < off.size(); ++i )
    if ( off[i] )
      cone.off_path_nets.push_back( make_net( i ) );
  std::sort( cone.reachable_outputs.begin(), cone.reachable_outputs.end() );
  return cone;
}

} // namespace seprop
