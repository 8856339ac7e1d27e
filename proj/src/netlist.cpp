#include "moore/netlist.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "moore/circuits.hpp"
#include "moore/gates.hpp"

namespace moore::cli
{

using nlohmann::json;

ParseError::ParseError( const std::string& what, std::size_t line, std::size_t column )
        : Error( "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + what ),
          _line{ line },
          _column{ column }
{
}

std::string read_file( const std::filesystem::path& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw IoError( "cannot read " + path.string() );
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file( const std::filesystem::path& path, std::string_view text )
{
    std::ofstream out( path, std::ios::binary );
    if ( !out )
        throw IoError( "cannot write " + path.string() );
    out << text;
    if ( !out )
        throw IoError( "write failed: " + path.string() );
}

namespace
{

struct ParamRange
{
    std::int64_t lo;
    std::int64_t hi;
    std::int64_t fallback;
};

using ParamTable = std::map<std::string, ParamRange>;

const std::map<std::string, ParamTable>& kinds()
{
    static const ParamRange delay{ 1, 64, 1 };
    static const std::map<std::string, ParamTable> table{
            { "nand", { { "t", delay }, { "inputs", { 1, 16, 2 } }, { "initial", { 0, 1, 1 } } } },
            { "or", { { "t", delay }, { "inputs", { 1, 16, 2 } }, { "initial", { 0, 1, 0 } } } },
            { "adder_bit", { { "t", delay }, { "initial_sum", { 0, 1, 0 } }, { "initial_carry", { 0, 1, 0 } } } },
            { "sr_latch", { { "t", delay }, { "initial_q", { 0, 1, 1 } }, { "initial_qbar", { 0, 1, 0 } } } },
            { "nand7", { { "t", delay }, { "initial", { 0, 1, 1 } } } },
            { "ripple_adder", { { "t", delay }, { "n", { 1, 8, 2 } } } },
            { "netlist", {} },
    };
    return table;
}

std::int64_t param( const Instance& inst, const std::string& key )
{
    const auto& range = kinds().at( inst.kind ).at( key );
    const auto it = inst.params.find( key );
    return it == inst.params.end() ? range.fallback : it->second;
}

Level level_param( const Instance& inst, const std::string& key )
{
    return to_level( static_cast<int>( param( inst, key ) ) );
}

std::size_t size_param( const Instance& inst, const std::string& key )
{
    return static_cast<std::size_t>( param( inst, key ) );
}

// Document reading

[[noreturn]] void invalid( const std::string& where, const std::string& what )
{
    throw ValidationError( where + ": " + what );
}

const json& field( const json& obj, const std::string& key, const std::string& where )
{
    const auto it = obj.find( key );
    if ( it == obj.end() )
        invalid( where, "missing \"" + key + "\"" );
    return *it;
}

std::string string_of( const json& v, const std::string& where )
{
    if ( !v.is_string() )
        invalid( where, "expected a string" );
    return v.get<std::string>();
}

void only_keys( const json& obj, std::initializer_list<std::string_view> keys, const std::string& where )
{
    if ( !obj.is_object() )
        invalid( where, "expected an object" );
    for ( const auto& [ k, _ ] : obj.items() )
        if ( std::find( keys.begin(), keys.end(), k ) == keys.end() )
            invalid( where, "unknown key \"" + k + "\"" );
}

std::vector<PinId> pin_list( const json& v, const std::string& where )
{
    if ( !v.is_array() )
        invalid( where, "expected an array of pin names" );
    std::vector<PinId> pins;
    std::set<PinId> seen;
    for ( const auto& p : v )
    {
        auto name = string_of( p, where );
        if ( name.empty() || name.find( '.' ) != std::string::npos || name.find( ',' ) != std::string::npos )
            invalid( where, "bad pin name \"" + name + "\"" );
        if ( !seen.insert( name ).second )
            invalid( where, "duplicate pin \"" + name + "\"" );
        pins.push_back( std::move( name ) );
    }
    return pins;
}

Instance read_instance( const json& v, const std::string& where )
{
    only_keys( v, { "name", "kind", "params", "ref" }, where );
    Instance inst;
    inst.name = string_of( field( v, "name", where ), where + ".name" );
    const std::string at = "instance \"" + inst.name + "\"";
    if ( inst.name.empty() || inst.name.find( '.' ) != std::string::npos )
        invalid( at, "bad instance name" );
    inst.kind = string_of( field( v, "kind", at ), at + ".kind" );
    const auto kind = kinds().find( inst.kind );
    if ( kind == kinds().end() )
        invalid( at, "unknown component kind \"" + inst.kind + "\"" );
    if ( v.contains( "params" ) )
    {
        const auto& params = v.at( "params" );
        if ( !params.is_object() )
            invalid( at, "params must be an object" );
        for ( const auto& [ key, value ] : params.items() )
        {
            const auto range = kind->second.find( key );
            if ( range == kind->second.end() )
                invalid( at, "unknown parameter \"" + key + "\" for kind " + inst.kind );
            if ( !value.is_number_integer() )
                invalid( at, "parameter \"" + key + "\" must be an integer" );
            const auto x = value.get<std::int64_t>();
            if ( x < range->second.lo || x > range->second.hi )
                invalid( at, "parameter \"" + key + "\" = " + std::to_string( x ) + " outside [" +
                                     std::to_string( range->second.lo ) + ", " + std::to_string( range->second.hi ) +
                                     "]" );
            inst.params[ key ] = x;
        }
    }
    if ( inst.kind == "netlist" )
        inst.ref = string_of( field( v, "ref", at ), at + ".ref" );
    else if ( v.contains( "ref" ) )
        invalid( at, "\"ref\" is only valid for kind netlist" );
    return inst;
}

Netlist read_netlist( const json& v, const std::string& where, bool top )
{
    if ( top )
        only_keys( v, { "name", "inputs", "outputs", "instances", "wires", "netlists" }, where );
    else
        only_keys( v, { "name", "inputs", "outputs", "instances", "wires" }, where );
    Netlist n;
    n.name = string_of( field( v, "name", where ), where + ".name" );
    const std::string at = "netlist \"" + n.name + "\"";
    n.inputs = pin_list( field( v, "inputs", at ), at + ".inputs" );
    n.outputs = pin_list( field( v, "outputs", at ), at + ".outputs" );
    for ( const auto& p : n.outputs )
        if ( std::find( n.inputs.begin(), n.inputs.end(), p ) != n.inputs.end() )
            invalid( at, "pin \"" + p + "\" is both input and output" );
    const auto& instances = field( v, "instances", at );
    if ( !instances.is_array() )
        invalid( at + ".instances", "expected an array" );
    std::set<std::string> names;
    for ( const auto& i : instances )
    {
        n.instances.push_back( read_instance( i, at + ".instances" ) );
        if ( !names.insert( n.instances.back().name ).second )
            invalid( at, "duplicate instance \"" + n.instances.back().name + "\"" );
    }
    const auto& wires = field( v, "wires", at );
    if ( !wires.is_array() )
        invalid( at + ".wires", "expected an array" );
    for ( const auto& w : wires )
    {
        only_keys( w, { "from", "to" }, at + ".wires" );
        n.wires.push_back(
                { string_of( field( w, "from", at + ".wires" ), at + ".wires.from" ),
                  string_of( field( w, "to", at + ".wires" ), at + ".wires.to" ) } );
    }
    if ( top && v.contains( "netlists" ) )
    {
        const auto& subs = v.at( "netlists" );
        if ( !subs.is_array() )
            invalid( at + ".netlists", "expected an array" );
        std::set<std::string> sub_names;
        for ( const auto& s : subs )
        {
            n.netlists.push_back( read_netlist( s, at + ".netlists", false ) );
            if ( !sub_names.insert( n.netlists.back().name ).second )
                invalid( at, "duplicate sub-netlist \"" + n.netlists.back().name + "\"" );
        }
    }
    return n;
}

// Lowering

struct Lowering
{
    const Netlist& root;
    std::vector<std::string> stack;

    const Netlist& find_sub( const std::string& name ) const
    {
        for ( const auto& s : root.netlists )
            if ( s.name == name )
                return s;
        invalid( "netlist \"" + root.name + "\"", "unknown sub-netlist \"" + name + "\"" );
    }

    Transducer device( const Instance& inst )
    {
        if ( inst.kind == "netlist" )
            return compose( spec_of( find_sub( inst.ref ) ) );
        const std::size_t t = size_param( inst, "t" );
        if ( inst.kind == "nand" || inst.kind == "or" )
        {
            const GateParams p{ numbered_pins( size_param( inst, "inputs" ) ), t, level_param( inst, "initial" ) };
            return inst.kind == "nand" ? make_nand( p ) : make_or( p );
        }
        if ( inst.kind == "adder_bit" )
            return make_adder_bit( { t, level_param( inst, "initial_sum" ), level_param( inst, "initial_carry" ) } );
        if ( inst.kind == "sr_latch" )
            return compose( make_sr_latch( t, { level_param( inst, "initial_q" ), level_param( inst, "initial_qbar" ) } ).spec );
        if ( inst.kind == "nand7" )
        {
            const Level init = level_param( inst, "initial" );
            return compose( make_nand7( t, { init, init, init } ) );
        }
        return compose( make_ripple_adder( size_param( inst, "n" ), t ).spec );
    }

    ProductSpec spec_of( const Netlist& n )
    {
        if ( std::find( stack.begin(), stack.end(), n.name ) != stack.end() )
            invalid( "netlist \"" + n.name + "\"", "sub-netlist references form a cycle" );
        stack.push_back( n.name );
        const std::string at = "netlist \"" + n.name + "\"";

        ProductSpec spec;
        spec.input_pins = PinSet( n.inputs );
        std::map<std::string, std::size_t> index;
        for ( const auto& inst : n.instances )
        {
            index[ inst.name ] = spec.factors.size();
            spec.factors.push_back( device( inst ) );
        }

        auto split = [ & ]( const std::string& ref ) -> std::pair<std::size_t, PinId> {
            const auto dot = ref.find( '.' );
            const auto it = index.find( ref.substr( 0, dot ) );
            if ( it == index.end() )
                invalid( at, "unknown instance in \"" + ref + "\"" );
            return { it->second, ref.substr( dot + 1 ) };
        };

        std::map<PinId, FactorPin> driven_outputs;
        for ( const auto& w : n.wires )
        {
            WireSource source;
            if ( w.from.find( '.' ) != std::string::npos )
            {
                auto [ f, pin ] = split( w.from );
                if ( !spec.factors[ f ].outputs().contains( pin ) )
                    invalid( at, "\"" + w.from + "\" is not an instance output" );
                source = FactorPin{ f, pin };
            }
            else
            {
                if ( !spec.input_pins.contains( w.from ) )
                    invalid( at, "\"" + w.from + "\" is not a netlist input" );
                source = External{ w.from };
            }

            if ( w.to.find( '.' ) != std::string::npos )
            {
                auto [ f, pin ] = split( w.to );
                if ( !spec.factors[ f ].inputs().contains( pin ) )
                    invalid( at, "\"" + w.to + "\" is not an instance input" );
                if ( !spec.wiring.emplace( std::pair{ f, pin }, source ).second )
                    invalid( at, "pin \"" + w.to + "\" is driven more than once" );
            }
            else
            {
                if ( std::find( n.outputs.begin(), n.outputs.end(), w.to ) == n.outputs.end() )
                    invalid( at, "\"" + w.to + "\" is not a netlist output" );
                const auto* fp = std::get_if<FactorPin>( &source );
                if ( !fp )
                    invalid( at, "output \"" + w.to + "\" must be driven by an instance output" );
                if ( !driven_outputs.emplace( w.to, *fp ).second )
                    invalid( at, "pin \"" + w.to + "\" is driven more than once" );
            }
        }
        for ( std::size_t f = 0; f < n.instances.size(); ++f )
            for ( const auto& pin : spec.factors[ f ].inputs() )
                if ( !spec.wiring.contains( { f, pin } ) )
                    invalid( at, "pin \"" + n.instances[ f ].name + "." + pin + "\" is not driven" );
        for ( const auto& out : n.outputs )
        {
            const auto it = driven_outputs.find( out );
            if ( it == driven_outputs.end() )
                invalid( at, "output \"" + out + "\" is not driven" );
            spec.exposure.push_back( { out, it->second } );
        }
        try
        {
            validate( spec );
        }
        catch ( const SpecInvalid& e )
        {
            invalid( at, e.what() );
        }
        stack.pop_back();
        return spec;
    }

    bool feedback_free( const Netlist& n )
    {
        const ProductSpec spec = spec_of( n );
        if ( !is_feedback_free( spec ) )
            return false;
        for ( const auto& inst : n.instances )
        {
            if ( inst.kind == "sr_latch" )
                return false;
            if ( inst.kind == "netlist" && !feedback_free( find_sub( inst.ref ) ) )
                return false;
        }
        return true;
    }
};

std::pair<std::size_t, std::size_t> line_column( std::string_view text, std::size_t byte )
{
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min( byte > 0 ? byte - 1 : 0, text.size() );
    for ( std::size_t i = 0; i < end; ++i )
    {
        if ( text[ i ] == '\n' )
        {
            ++line;
            column = 1;
        }
        else
            ++column;
    }
    return { line, column };
}

} // namespace

Netlist parse_netlist( std::string_view text )
{
    json doc;
    try
    {
        doc = json::parse( text.begin(), text.end() );
    }
    catch ( const json::parse_error& e )
    {
        const auto [ line, column ] = line_column( text, e.byte );
        std::string what = e.what();
        // Drop the library's own "[json.exception...] parse error at line.." prefix.
        if ( const auto pos = what.find( ": syntax error" ); pos != std::string::npos )
            what = what.substr( pos + 2 );
        throw ParseError( what, line, column );
    }
    if ( !doc.is_object() )
        invalid( "document", "expected an object" );
    Netlist n = read_netlist( doc, "document", true );
    // Catches wiring errors in the top level and every referenced sub-netlist.
    (void)lower( n );
    return n;
}

Netlist load_netlist( const std::filesystem::path& path )
{
    return parse_netlist( read_file( path ) );
}

ProductSpec lower( const Netlist& n )
{
    Lowering l{ n, {} };
    return l.spec_of( n );
}

Transducer build( const Netlist& n )
{
    return compose( lower( n ) );
}

bool feedback_free( const Netlist& n )
{
    Lowering l{ n, {} };
    return l.feedback_free( n );
}

} // namespace moore::cli
