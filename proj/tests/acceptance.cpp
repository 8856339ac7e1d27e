// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "moore/algebra.hpp"
#include "moore/checker.hpp"
#include "moore/circuits.hpp"
#include "moore/commands.hpp"
#include "moore/gates.hpp"
#include "moore/netlist.hpp"
#include "moore/stimulus.hpp"
#include "moore/waveform.hpp"

using namespace moore;

namespace
{

const std::string data = MOORE_DATA_DIR;
const std::string golden = MOORE_GOLDEN_DIR;

struct Outcome
{
    bool ok = true;
    std::string note;

    void require( bool cond, const std::string& what )
    {
        if ( !cond )
        {
            ok = false;
            note += ( note.empty() ? "" : "; " ) + what;
        }
    }
    void record( const std::string& what ) { note += ( note.empty() ? "" : "; " ) + what; }
};

std::string status_name( const Verdict& v )
{
    switch ( v.status )
    {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    default: return "BUDGET";
    }
}

GateParams nand2( std::size_t t, TransientPolicy policy = TransientPolicy::hold_last )
{
    return { numbered_pins( 2 ), t, Level::high, policy };
}

Outcome gate_constraints()
{
    Outcome o;
    for ( std::size_t t : { 1, 2 } )
    {
        const auto v = check_gate_constraints( make_nand( nand2( t ) ), t, 6 );
        o.require( v.passed(), "t=" + std::to_string( t ) + " " + status_name( v ) + " " + v.detail );
    }
    return o;
}

Outcome stability_lemma()
{
    Outcome o;
    for ( auto policy : { TransientPolicy::hold_last, TransientPolicy::adversarial } )
        for ( std::size_t k = 0; k <= 3; ++k )
        {
            const auto v = check_stability_lemma( 2, k, 8, policy );
            o.require( v.passed(), std::string( policy == TransientPolicy::adversarial ? "adversarial" : "holdlast" )
                                       + " k=" + std::to_string( k ) + " " + status_name( v ) + " " + v.detail );
        }
    return o;
}

Outcome theorem1()
{
    Outcome o;
    Theorem1Options opts;
    opts.depth = 4;
    opts.random_trials = 1000;
    opts.random_length = 50;
    const std::vector<std::pair<std::string, ProductSpec>> specs{
        { "latch", make_sr_latch( 1 ).spec },
        { "nand7", make_nand7( 1 ) },
        { "ripple", make_ripple_adder( 2, 1 ).spec },
    };
    for ( const auto& [ name, spec ] : specs )
    {
        const auto v = theorem1_check( spec, opts );
        o.require( v.passed(), name + " " + status_name( v ) + " " + v.detail );
    }
    return o;
}

Outcome latch_claim()
{
    Outcome o;
    const auto replayable = [ & ]( const Verdict& v, std::size_t t_latch, const NondetTransducer& m ) {
        if ( v.status != Status::fail )
            return true;
        const auto props = latch_claim_properties( t_latch );
        return v.counterexample && replay_violates( m, props, *v.counterexample );
    };
    for ( Level a : { Level::low, Level::high } )
        for ( Level b : { Level::low, Level::high } )
        {
            const auto r = check_latch_claim( 1, 4, TransientPolicy::hold_last, { a, b } );
            const std::string init = "init=" + std::to_string( int( a ) ) + std::to_string( int( b ) );
            o.require( r.claim.passed(), init + " claim " + status_name( r.claim ) + " " + r.claim.detail );
            o.require( r.tightness.status != Status::budget, init + " tightness hit budget" );
            const NondetTransducer m( compose( make_sr_latch( 1, { a, b } ).spec ) );
            o.require( replayable( r.tightness, r.t_latch - 1, m ), init + " tightness counterexample does not replay" );
            if ( a == Level::high && b == Level::low )
                o.record( "holdlast tightness at 3t+1: " + status_name( r.tightness ) );
        }
    const auto adv = check_latch_claim( 1, 2, TransientPolicy::adversarial );
    o.require( adv.claim.status != Status::budget, "adversarial hit budget" );
    o.require( replayable( adv.claim, adv.t_latch, adversarial_latch( make_sr_latch( 1 ) ) ),
               "adversarial counterexample does not replay" );
    o.record( "adversarial slack 2: " + status_name( adv.claim ) + ", tightness " + status_name( adv.tightness ) );
    return o;
}

Outcome adder_lemma()
{
    Outcome o;
    for ( std::size_t t : { 1, 2 } )
        for ( std::size_t k = 0; k <= 3; ++k )
        {
            const auto v = check_adder_lemma( t, k, 7 );
            o.require( v.passed(), "t=" + std::to_string( t ) + " k=" + std::to_string( k ) + " " + status_name( v )
                                       + " " + v.detail );
        }
    return o;
}

Outcome ripple_star()
{
    Outcome o;
    for ( auto [ n, t ] : std::vector<std::pair<std::size_t, std::size_t>>{ { 1, 1 }, { 2, 1 }, { 3, 1 }, { 2, 2 } } )
    {
        const auto v = check_ripple_star( n, t );
        o.require( v.passed(),
                   "n=" + std::to_string( n ) + " t=" + std::to_string( t ) + " " + status_name( v ) + " " + v.detail );
    }
    return o;
}

Outcome minimization()
{
    Outcome o;
    const std::vector<std::pair<std::string, Transducer>> machines{
        { "nand t=1", make_nand( nand2( 1 ) ) },
        { "nand t=2", make_nand( nand2( 2 ) ) },
        { "adder_bit", make_adder_bit( {} ) },
        { "latch", compose( make_sr_latch( 1 ).spec ) },
    };
    for ( const auto& [ name, m ] : machines )
    {
        const auto min = minimize( m, default_max_states );
        const auto v = equivalent( m, min, 6 );
        o.require( v.passed(), name + " not equivalent to its minimization" );
        const auto g = tabulate( min, default_max_states );
        for ( std::size_t i = 0; i < g.states.size(); ++i )
            for ( std::size_t j = i + 1; j < g.states.size(); ++j )
                o.require( distinguish( min, g.states[ i ], g.states[ j ], g.states.size() ).has_value(),
                           name + " has an equivalent state pair" );
    }
    return o;
}

Outcome algebra()
{
    Outcome o;
    const Transducer nand7 = compose( make_nand7( 1 ) );
    const Transducer latch = compose( make_sr_latch( 1 ).spec );
    const std::vector<std::pair<std::string, Transducer>> machines{
        { "nand t=1", make_nand( nand2( 1 ) ) },
        { "nand t=2", make_nand( nand2( 2 ) ) },
        { "nand7", nand7 },
        { "latch", latch },
        { "ripple n=2", compose( make_ripple_adder( 2, 1 ).spec ) },
    };
    for ( const auto& [ name, m ] : machines )
    {
        try
        {
            const auto mon = monoid( m, 100'000 );
            const auto v = monoid_laws( mon, 10'000 );
            o.require( v.passed(), name + " laws " + v.detail );
            if ( name == "latch" )
                o.record( "|Mon(latch)| = " + std::to_string( mon.size() ) );
        }
        catch ( const Error& e )
        {
            o.require( false, name + ": " + e.what() );
        }
    }
    o.require( is_combinational( nand7 ), "nand7 not combinational" );
    o.require( !is_combinational( latch ), "latch combinational" );
    return o;
}

Outcome cli_formats()
{
    Outcome o;
    const auto tmp = std::filesystem::temp_directory_path() / "moore_acceptance";
    std::filesystem::create_directories( tmp );
    const auto call = [ & ]( const std::vector<std::string>& args, std::string* out = nullptr ) {
        std::ostringstream so;
        std::ostringstream se;
        const int code = cli::run_cli( args, so, se );
        if ( out )
            *out = so.str();
        return code;
    };

    const auto vcd = tmp / "latch.vcd";
    o.require( call( { "run", "--netlist", data + "/netlists/sr_latch.json", "--stimulus",
                       data + "/stimuli/latch5.csv", "--out", vcd.string() } )
                       == 0
                   && cli::read_file( vcd ) == cli::read_file( golden + "/sr_latch_latch5.vcd" ),
               "latch VCD differs from golden" );
    const auto csv = tmp / "ripple2.csv";
    o.require( call( { "run", "--netlist", data + "/netlists/ripple2.json", "--stimulus",
                       data + "/stimuli/ripple2.csv", "--out", csv.string() } )
                       == 0
                   && cli::read_file( csv ) == cli::read_file( golden + "/ripple2.csv" ),
               "ripple CSV differs from golden" );

    const std::string or_path = data + "/netlists/or.json";
    const auto cex = tmp / "or_cex.csv";
    const int code = call( { "check", "gate_constraints", "t=1", "depth=6", "--netlist", or_path, "--out",
                             cex.string() } );
    o.require( code == 1, "gate_constraints on OR did not FAIL" );
    if ( code != 1 )
        return o;
    std::string replayed;
    o.require( call( { "run", "--netlist", or_path, "--stimulus", cex.string(), "--format", "csv" }, &replayed ) == 0,
               "replay run failed" );
    const auto m = cli::build( cli::load_netlist( or_path ) );
    const auto v = check_gate_constraints( m, 1, 6 );
    const Trace w = cli::parse_stimulus( cli::read_file( cex ), m.inputs() );
    o.require( v.counterexample && v.counterexample->trace == w, "stimulus is not the checker's counterexample" );
    const auto expected = replay_outputs( NondetTransducer( m ), Counterexample{ w, {} } );
    o.require( replayed == cli::to_csv( m.outputs(), expected ), "replayed outputs differ tick for tick" );
    // Rerunning the constraint check on exactly that trace still fails at its end.
    o.require( check_gate_constraints( m, 1, w.size() ).status == Status::fail, "violation not reproduced" );
    return o;
}

struct Criterion
{
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        { 1, "gate constraints", 5, gate_constraints },
        { 2, "stability lemma", 60, stability_lemma },
        { 3, "theorem 1", 60, theorem1 },
        { 4, "latch claim", 300, latch_claim },
        { 5, "adder lemma", 300, adder_lemma },
        { 6, "ripple property", 60, ripple_star },
        { 7, "minimization", 60, minimization },
        { 8, "algebra", 60, algebra },
        { 9, "cli formats", 60, cli_formats },
    };
    int failures = 0;
    for ( const auto& c : criteria )
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch ( const std::exception& e )
        {
            o.require( false, std::string( "exception: " ) + e.what() );
        }
        const double secs = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
        if ( secs > c.limit_seconds )
            o.require( false, "over time limit of " + std::to_string( int( c.limit_seconds ) ) + " s" );
        if ( !o.ok )
            ++failures;
        std::cout << ( o.ok ? "[PASS] " : "[FAIL] " ) << c.id << ". " << c.name << " (" << std::fixed
                  << std::setprecision( 2 ) << secs << " s)" << ( o.note.empty() ? "" : ": " + o.note ) << std::endl;
    }
    std::cout << ( criteria.size() - failures ) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
