#include "moore/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "moore/algebra.hpp"
#include "moore/checker.hpp"
#include "moore/circuits.hpp"
#include "moore/gates.hpp"
#include "moore/netlist.hpp"
#include "moore/product.hpp"
#include "moore/stimulus.hpp"
#include "moore/waveform.hpp"

namespace moore::cli
{

namespace
{

struct Flags
{
    std::string netlist;
    std::string stimulus;
    std::string out;
    std::string format;
    std::optional<std::size_t> depth;
    std::optional<std::string> policy;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> budget;
    std::string property;
    std::vector<std::string> params;
};

class UsageError : public Error
{
public:
    using Error::Error;
};

const char* yes_no( bool b )
{
    return b ? "yes" : "no";
}

TransientPolicy parse_policy( const std::string& s )
{
    if ( s == "holdlast" || s == "hold_last" )
        return TransientPolicy::hold_last;
    if ( s == "adversarial" )
        return TransientPolicy::adversarial;
    throw UsageError( "unknown policy \"" + s + "\" (holdlast|adversarial)" );
}

SearchMode parse_mode( const std::string& s )
{
    if ( s == "exhaustive" )
        return SearchMode::exhaustive;
    if ( s == "memoized" )
        return SearchMode::memoized;
    throw UsageError( "unknown mode \"" + s + "\" (exhaustive|memoized)" );
}

// key=value arguments of `check`, with defaults per property.
class Params
{
public:
    Params( const std::vector<std::string>& args, std::map<std::string, std::string> defaults )
            : _values{ std::move( defaults ) }
    {
        for ( const auto& a : args )
        {
            const auto eq = a.find( '=' );
            if ( eq == std::string::npos )
                throw UsageError( "expected key=value, got \"" + a + "\"" );
            const auto key = a.substr( 0, eq );
            if ( !_values.contains( key ) )
                throw UsageError( "unknown parameter \"" + key + "\"" );
            _values[ key ] = a.substr( eq + 1 );
        }
    }

    void set( const std::string& key, std::string value )
    {
        if ( _values.contains( key ) )
            _values[ key ] = std::move( value );
    }

    [[nodiscard]] const std::string& str( const std::string& key ) const { return _values.at( key ); }

    [[nodiscard]] std::uint64_t num( const std::string& key ) const
    {
        const auto& v = _values.at( key );
        std::size_t used = 0;
        std::uint64_t x = 0;
        try
        {
            x = std::stoull( v, &used );
        }
        catch ( const std::exception& )
        {
            used = 0;
        }
        if ( used == 0 || used != v.size() || v.front() == '-' )
            throw UsageError( "parameter \"" + key + "\" must be a non-negative integer" );
        return x;
    }

    [[nodiscard]] std::size_t size( const std::string& key ) const { return static_cast<std::size_t>( num( key ) ); }

    [[nodiscard]] Level level( const std::string& key ) const
    {
        const auto x = num( key );
        if ( x > 1 )
            throw UsageError( "parameter \"" + key + "\" must be 0 or 1" );
        return to_level( static_cast<int>( x ) );
    }

    [[nodiscard]] std::string summary() const
    {
        std::string s;
        for ( const auto& [ k, v ] : _values )
            s += ( s.empty() ? "" : " " ) + k + "=" + v;
        return s;
    }

private:
    std::map<std::string, std::string> _values;
};

void print_verdict( std::ostream& out, const std::string& label, const Verdict& v )
{
    out << label << ": " << to_string( v.status ) << '\n';
    out << "traces_explored: " << v.traces_explored << '\n';
    if ( !v.bounded )
        out << "exhaustive: yes\n";
    if ( !v.detail.empty() )
        out << "detail: " << v.detail << '\n';
}

int report_failure( std::ostream& out, const Flags& f, const Verdict& v )
{
    if ( !v.counterexample )
        return exit_fail;
    const auto& c = *v.counterexample;
    const auto stimulus = format_stimulus( c.trace );
    out << "counterexample (" << c.trace.size() << " samples):\n" << stimulus;
    if ( std::any_of( c.choices.begin(), c.choices.end(), []( std::uint32_t x ) { return x != 0; } ) )
    {
        out << "choices:";
        for ( auto x : c.choices )
            out << ' ' << x;
        out << '\n';
    }
    if ( !f.out.empty() )
        write_file( f.out, stimulus );
    return exit_fail;
}

int exit_for( const Verdict& v )
{
    switch ( v.status )
    {
    case Status::pass:
        return exit_ok;
    case Status::fail:
        return exit_fail;
    case Status::budget:
        return exit_error;
    }
    return exit_error;
}

Netlist require_netlist( const Flags& f, const std::string& what )
{
    if ( f.netlist.empty() )
        throw UsageError( what + " needs --netlist" );
    return load_netlist( f.netlist );
}

int cmd_check( const Flags& f, std::ostream& out )
{
    using Defaults = std::map<std::string, std::string>;
    static const std::map<std::string, Defaults> defaults{
            { "gate_constraints", { { "t", "1" }, { "depth", "6" } } },
            { "stability_lemma", { { "t", "2" }, { "k", "0" }, { "depth", "8" }, { "policy", "holdlast" },
                                   { "mode", "exhaustive" } } },
            { "latch_claim", { { "t", "1" }, { "slack", "4" }, { "policy", "holdlast" }, { "initial_q", "1" },
                               { "initial_qbar", "0" }, { "mode", "exhaustive" } } },
            { "adder_lemma", { { "t", "1" }, { "k", "0" }, { "depth", "7" }, { "mode", "exhaustive" } } },
            { "ripple_star", { { "n", "2" }, { "t", "1" }, { "trials", "10" }, { "prefix", "8" }, { "seed", "0" } } },
            { "theorem1", { { "depth", "4" }, { "trials", "1000" }, { "length", "50" }, { "seed", "0" } } },
    };
    const auto d = defaults.find( f.property );
    if ( d == defaults.end() )
        throw UnknownProperty( "unknown property \"" + f.property + "\"" );
    Params p( f.params, d->second );
    if ( f.depth )
        p.set( "depth", std::to_string( *f.depth ) );
    if ( f.policy )
        p.set( "policy", *f.policy );
    if ( f.seed )
        p.set( "seed", std::to_string( *f.seed ) );

    CheckOptions opts;
    if ( f.budget )
        opts.max_nodes = *f.budget;
    const auto mode = [ & ] { opts.mode = parse_mode( p.str( "mode" ) ); };

    out << "property: " << f.property << '\n';
    out << "parameters: " << p.summary() << '\n';

    Verdict v;
    if ( f.property == "gate_constraints" )
    {
        const std::size_t t = p.size( "t" );
        const Transducer m = f.netlist.empty() ? make_nand( { numbered_pins( 2 ), t } ) : build( load_netlist( f.netlist ) );
        v = check_gate_constraints( m, t, p.size( "depth" ) );
    }
    else if ( f.property == "stability_lemma" )
    {
        mode();
        v = check_stability_lemma( p.size( "t" ), p.size( "k" ), p.size( "depth" ), parse_policy( p.str( "policy" ) ),
                                   opts );
    }
    else if ( f.property == "latch_claim" )
    {
        mode();
        const auto r = check_latch_claim( p.size( "t" ), p.size( "slack" ), parse_policy( p.str( "policy" ) ),
                                          { p.level( "initial_q" ), p.level( "initial_qbar" ) }, opts );
        out << "t_latch: " << r.t_latch << '\n' << "depth: " << r.depth << '\n';
        print_verdict( out, "tightness (t_latch=" + std::to_string( r.t_latch - 1 ) + ")", r.tightness );
        v = r.claim;
    }
    else if ( f.property == "adder_lemma" )
    {
        mode();
        v = check_adder_lemma( p.size( "t" ), p.size( "k" ), p.size( "depth" ), opts );
    }
    else if ( f.property == "ripple_star" )
    {
        v = check_ripple_star( p.size( "n" ), p.size( "t" ),
                               { p.size( "prefix" ), p.size( "trials" ), p.num( "seed" ) } );
    }
    else
    {
        Theorem1Options o;
        o.depth = p.size( "depth" );
        o.random_trials = p.size( "trials" );
        o.random_length = p.size( "length" );
        o.seed = p.num( "seed" );
        if ( f.budget )
            o.max_nodes = *f.budget;
        v = theorem1_check( lower( require_netlist( f, "theorem1" ) ), o );
    }
    print_verdict( out, "verdict", v );
    if ( v.status == Status::fail )
        return report_failure( out, f, v );
    return exit_for( v );
}

int cmd_run( const Flags& f, std::ostream& out )
{
    const Netlist n = require_netlist( f, "run" );
    const Transducer m = build( n );
    const Trace w = f.stimulus.empty() ? Trace( m.inputs() ) : parse_stimulus( read_file( f.stimulus ), m.inputs() );

    std::string format = f.format;
    if ( format.empty() )
        format = std::filesystem::path( f.out ).extension() == ".csv" ? "csv" : "vcd";
    if ( format != "vcd" && format != "csv" )
        throw UsageError( "unknown format \"" + format + "\" (vcd|csv)" );

    const auto ticks = run( m, w );
    const auto text = format == "vcd" ? to_vcd( m.outputs(), ticks ) : to_csv( m.outputs(), ticks );
    if ( f.out.empty() )
        out << text;
    else
        write_file( f.out, text );
    return exit_ok;
}

int cmd_info( const Flags& f, std::ostream& out )
{
    const Netlist n = require_netlist( f, "info" );
    out << "name: " << n.name << '\n';
    out << "inputs: " << PinSet( n.inputs ).to_string() << '\n';
    out << "outputs: " << PinSet( n.outputs ).to_string() << '\n';
    out << "instances: " << n.instances.size() << '\n';
    out << "feedback-free: " << yes_no( feedback_free( n ) ) << '\n';
    out << "combinational: " << yes_no( is_combinational( build( n ) ) ) << '\n';
    return exit_ok;
}

int cmd_minimize( const Flags& f, std::ostream& out )
{
    const Netlist n = require_netlist( f, "minimize" );
    const std::size_t budget = f.budget ? static_cast<std::size_t>( *f.budget ) : default_max_states;
    const Transducer m = build( n );
    const auto states = reachable_states( m, budget ).size();
    const auto minimal = reachable_states( minimize( m, budget ), budget ).size();
    out << "reachable states: " << states << '\n';
    out << "minimized states: " << minimal << '\n';
    return exit_ok;
}

int cmd_monoid( const Flags& f, std::ostream& out )
{
    const Netlist n = require_netlist( f, "monoid" );
    const std::size_t budget = f.budget ? static_cast<std::size_t>( *f.budget ) : 100'000;
    const Transducer m = build( n );
    const auto mon = monoid( m, budget );
    const auto st = describe( mon );
    out << "states: " << st.states << '\n';
    out << "size: " << st.size << '\n';
    out << "generators: " << mon.generators.size() << '\n';
    out << "distinct generators: " << st.distinct_generators << '\n';
    out << "idempotents: " << st.idempotents << '\n';
    out << "non-identity invertible element: " << yes_no( st.has_nontrivial_unit ) << '\n';
    out << "combinational: " << yes_no( st.aperiodic ) << '\n';
    out << "only self-loops: " << yes_no( has_only_self_loops( m ) ) << '\n';
    print_verdict( out, "monoid laws", monoid_laws( mon, 1000 ) );
    return exit_ok;
}

} // namespace

int run_cli( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Moore-machine circuit simulator and checker", "moore" };
    app.require_subcommand( 1 );
    Flags f;

    auto netlist = [ & ]( CLI::App* sub ) { sub->add_option( "--netlist", f.netlist, "Netlist JSON" ); };
    auto budget = [ & ]( CLI::App* sub ) { sub->add_option( "--budget", f.budget, "State, element or node budget" ); };

    auto* run_cmd = app.add_subcommand( "run", "Simulate a netlist on a stimulus" );
    netlist( run_cmd );
    run_cmd->add_option( "--stimulus", f.stimulus, "Stimulus CSV (default: empty trace)" );
    run_cmd->add_option( "--out", f.out, "Output file (default: stdout)" );
    run_cmd->add_option( "--format", f.format, "vcd|csv" );

    auto* check_cmd = app.add_subcommand( "check", "Check a property" );
    check_cmd->add_option( "property", f.property, "Property name" )->required();
    check_cmd->add_option( "params", f.params, "key=value parameters" );
    netlist( check_cmd );
    check_cmd->add_option( "--out", f.out, "Write a counterexample stimulus here" );
    check_cmd->add_option( "--depth", f.depth, "Trace depth" );
    check_cmd->add_option( "--policy", f.policy, "holdlast|adversarial" );
    check_cmd->add_option( "--seed", f.seed, "Random seed" );
    budget( check_cmd );

    auto* info_cmd = app.add_subcommand( "info", "Describe a netlist" );
    netlist( info_cmd );
    auto* min_cmd = app.add_subcommand( "minimize", "Report minimized state count" );
    netlist( min_cmd );
    budget( min_cmd );
    auto* mon_cmd = app.add_subcommand( "monoid", "Report the transformation monoid" );
    netlist( mon_cmd );
    budget( mon_cmd );

    try
    {
        std::vector<std::string> reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e, out, err );
        return code == 0 ? exit_ok : exit_error;
    }

    try
    {
        if ( run_cmd->parsed() )
            return cmd_run( f, out );
        if ( check_cmd->parsed() )
            return cmd_check( f, out );
        if ( info_cmd->parsed() )
            return cmd_info( f, out );
        if ( min_cmd->parsed() )
            return cmd_minimize( f, out );
        return cmd_monoid( f, out );
    }
    catch ( const std::exception& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

} // namespace moore::cli
