#include "moore/waveform.hpp"

#include <sstream>

namespace moore::cli
{

namespace
{

constexpr char first_id = '!';
constexpr std::size_t id_range = '~' - '!' + 1;

} // namespace

std::string vcd_identifier( std::size_t i )
{
    std::string id;
    do
    {
        id.insert( id.begin(), static_cast<char>( first_id + i % id_range ) );
        i /= id_range;
    } while ( i-- > 0 );
    return id;
}

std::string to_vcd( const PinSet& pins, std::span<const OutputVector> ticks )
{
    std::ostringstream out;
    out << "$timescale 1 ns $end\n";
    for ( std::size_t i = 0; i < pins.size(); ++i )
        out << "$var wire 1 " << vcd_identifier( i ) << ' ' << pins[ i ] << " $end\n";
    out << "$enddefinitions $end\n";
    std::vector<Level> prev;
    for ( std::size_t tick = 0; tick < ticks.size(); ++tick )
    {
        const auto levels = ticks[ tick ].levels_in( pins );
        std::ostringstream block;
        for ( std::size_t i = 0; i < pins.size(); ++i )
            if ( tick == 0 || levels[ i ] != prev[ i ] )
                block << to_char( levels[ i ] ) << vcd_identifier( i ) << '\n';
        if ( tick == 0 || !block.str().empty() )
            out << '#' << tick << '\n' << block.str();
        prev = levels;
    }
    return out.str();
}

std::string to_csv( const PinSet& pins, std::span<const OutputVector> ticks )
{
    std::ostringstream out;
    out << "tick";
    for ( const auto& p : pins )
        out << ',' << p;
    out << '\n';
    for ( std::size_t tick = 0; tick < ticks.size(); ++tick )
    {
        out << tick;
        for ( Level l : ticks[ tick ].levels_in( pins ) )
            out << ',' << to_char( l );
        out << '\n';
    }
    return out.str();
}

} // namespace moore::cli
