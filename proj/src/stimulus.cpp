#include "moore/stimulus.hpp"

#include <sstream>

#include "moore/netlist.hpp"

namespace moore::cli
{

namespace
{

std::vector<std::string_view> split_cells( std::string_view line )
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for ( ;; )
    {
        const auto comma = line.find( ',', start );
        cells.push_back( line.substr( start, comma == std::string_view::npos ? std::string_view::npos : comma - start ) );
        if ( comma == std::string_view::npos )
            return cells;
        start = comma + 1;
    }
}

std::size_t column_of( const std::vector<std::string_view>& cells, std::size_t i )
{
    std::size_t col = 1;
    for ( std::size_t j = 0; j < i; ++j )
        col += cells[ j ].size() + 1;
    return col;
}

} // namespace

Trace parse_stimulus( std::string_view text, const PinSet& expected )
{
    std::vector<std::string_view> lines;
    for ( std::size_t start = 0; start < text.size(); )
    {
        auto end = text.find( '\n', start );
        if ( end == std::string_view::npos )
            end = text.size();
        auto line = text.substr( start, end - start );
        if ( !line.empty() && line.back() == '\r' )
            line.remove_suffix( 1 );
        lines.push_back( line );
        start = end + 1;
    }
    while ( !lines.empty() && lines.back().empty() )
        lines.pop_back();
    if ( lines.empty() )
        throw ParseError( "missing header", 1, 1 );

    const auto header = split_cells( lines[ 0 ] );
    if ( header[ 0 ] != "tick" )
        throw ParseError( "first column must be \"tick\"", 1, 1 );
    std::vector<PinId> names;
    for ( std::size_t i = 1; i < header.size(); ++i )
        names.emplace_back( header[ i ] );
    PinSet pins;
    try
    {
        pins = PinSet( names );
    }
    catch ( const Error& e )
    {
        throw ParseError( e.what(), 1, 1 );
    }
    if ( !pins.same_set( expected ) )
        throw PinMismatch( "stimulus pins " + pins.to_string() + " do not match inputs " + expected.to_string() );

    Trace w( pins );
    for ( std::size_t r = 1; r < lines.size(); ++r )
    {
        const auto cells = split_cells( lines[ r ] );
        if ( cells.size() != header.size() )
            throw ParseError( "expected " + std::to_string( header.size() ) + " cells, got " +
                                      std::to_string( cells.size() ),
                              r + 1, 1 );
        if ( cells[ 0 ] != std::to_string( r - 1 ) )
            throw ParseError( "tick must be " + std::to_string( r - 1 ), r + 1, 1 );
        std::vector<Level> row;
        for ( std::size_t i = 1; i < cells.size(); ++i )
        {
            if ( cells[ i ] != "0" && cells[ i ] != "1" )
                throw ParseError( "cell must be 0 or 1", r + 1, column_of( cells, i ) );
            row.push_back( cells[ i ] == "1" ? Level::high : Level::low );
        }
        w.push_back( std::move( row ) );
    }
    return w.reordered( expected );
}

std::string format_stimulus( const Trace& w )
{
    std::ostringstream out;
    out << "tick";
    for ( const auto& p : w.pins() )
        out << ',' << p;
    out << '\n';
    for ( std::size_t i = 0; i < w.size(); ++i )
    {
        out << i;
        for ( Level l : w.row( i ) )
            out << ',' << to_char( l );
        out << '\n';
    }
    return out.str();
}

} // namespace moore::cli
