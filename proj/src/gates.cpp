#include "moore/gates.hpp"

#include <algorithm>

#include "moore/checker.hpp"

namespace moore
{

PinSet numbered_pins( std::size_t count )
{
    std::vector<PinId> names;
    for ( std::size_t i = 1; i <= count; ++i )
        names.push_back( std::to_string( i ) );
    return PinSet( std::move( names ) );
}

const PinSet& adder_inputs()
{
    static const PinSet pins{ "v1", "v2", "carry_in" };
    return pins;
}

const PinSet& adder_outputs()
{
    static const PinSet pins{ "sum", "carry_out" };
    return pins;
}

std::vector<Level> AllowedOutputs::levels() const
{
    std::vector<Level> out;
    if ( _zero )
        out.push_back( Level::low );
    if ( _one )
        out.push_back( Level::high );
    return out;
}

void validate( const GateParams& p )
{
    if ( p.pins.empty() )
        throw Error( "gate needs at least one input pin" );
    if ( p.delay_t == 0 )
        throw Error( "gate propagation delay must be at least 1" );
}

namespace
{

// Shared (level, run) bookkeeping for gates and the adder.
void advance_runs( std::vector<std::int32_t>& words, std::span<const Level> input, std::size_t cap )
{
    for ( std::size_t p = 0; p < input.size(); ++p )
    {
        auto& level = words[ 2 * p ];
        auto& run = words[ 2 * p + 1 ];
        const auto now = static_cast<std::int32_t>( to_int( input[ p ] ) );
        if ( run > 0 && level == now )
            run = std::min<std::int32_t>( run + 1, static_cast<std::int32_t>( cap ) );
        else
        {
            level = now;
            run = 1;
        }
    }
}

std::vector<PinRun> decode_runs( std::span<const std::int32_t> words, std::size_t pins )
{
    std::vector<PinRun> runs( pins );
    for ( std::size_t p = 0; p < pins; ++p )
        runs[ p ] = { to_level( words[ 2 * p ] != 0 ), static_cast<std::size_t>( words[ 2 * p + 1 ] ) };
    return runs;
}

AllowedOutputs or_allowed( std::span<const PinRun> runs, std::size_t t )
{
    const bool some_high = std::any_of( runs.begin(), runs.end(),
                                        [ & ]( const PinRun& r ) { return r.level == Level::high && r.run >= t; } );
    if ( some_high )
        return AllowedOutputs::only( Level::high );
    const bool all_low = std::all_of( runs.begin(), runs.end(),
                                      [ & ]( const PinRun& r ) { return r.level == Level::low && r.run >= t; } );
    if ( all_low )
        return AllowedOutputs::only( Level::low );
    return AllowedOutputs::any();
}

enum class GateKind
{
    nand,
    or_,
};

class GateMachine final : public Machine
{
public:
    GateMachine( GateKind kind, const GateParams& p ) : _kind{ kind }, _t{ p.delay_t }, _in{ p.pins }
    {
        validate( p );
        if ( p.policy != TransientPolicy::hold_last )
            throw Error( "only HoldLast gates are deterministic machines" );
        _init.words.assign( 2 * _in.size() + 1, 0 );
        _init.words.back() = to_int( p.initial_output );
    }

    const PinSet& inputs() const override { return _in; }
    const PinSet& outputs() const override { return _out; }
    State initial() const override { return _init; }

    State step( const State& s, std::span<const Level> input ) const override
    {
        State next = s;
        advance_runs( next.words, input, _t );
        const auto runs = decode_runs( next.words, _in.size() );
        const auto allowed = _kind == GateKind::nand ? nand_allowed( runs, _t ) : or_allowed( runs, _t );
        if ( allowed.singleton() )
            next.words.back() = to_int( allowed.forced() );
        return next;
    }

    std::vector<Level> output( const State& s ) const override { return { to_level( s.words.back() != 0 ) }; }

private:
    GateKind _kind;
    std::size_t _t;
    PinSet _in;
    PinSet _out{ PinId( gate_output_pin ) };
    State _init;
};

class AdderMachine final : public Machine
{
public:
    explicit AdderMachine( const AdderParams& p ) : _t{ p.delay_t }
    {
        if ( p.delay_t == 0 )
            throw Error( "adder delay must be at least 1" );
        _init.words.assign( 2 * 3 + 2, 0 );
        _init.words[ 6 ] = to_int( p.initial_sum );
        _init.words[ 7 ] = to_int( p.initial_carry );
    }

    const PinSet& inputs() const override { return adder_inputs(); }
    const PinSet& outputs() const override { return adder_outputs(); }
    State initial() const override { return _init; }

    State step( const State& s, std::span<const Level> input ) const override
    {
        State next = s;
        advance_runs( next.words, input, _t );
        const auto runs = decode_runs( next.words, 3 );
        const bool settled =
                std::all_of( runs.begin(), runs.end(), [ & ]( const PinRun& r ) { return r.run >= _t; } );
        if ( settled )
        {
            const int total = to_int( runs[ 0 ].level ) + to_int( runs[ 1 ].level ) + to_int( runs[ 2 ].level );
            next.words[ 6 ] = total % 2;
            next.words[ 7 ] = total / 2;
        }
        return next;
    }

    std::vector<Level> output( const State& s ) const override
    {
        return { to_level( s.words[ 6 ] != 0 ), to_level( s.words[ 7 ] != 0 ) };
    }

private:
    std::size_t _t;
    State _init;
};

} // namespace

Transducer make_nand( const GateParams& p )
{
    return Transducer( std::make_shared<GateMachine>( GateKind::nand, p ) );
}

Transducer make_or( const GateParams& p )
{
    return Transducer( std::make_shared<GateMachine>( GateKind::or_, p ) );
}

Transducer make_adder_bit( const AdderParams& p )
{
    return Transducer( std::make_shared<AdderMachine>( p ) );
}

AllowedOutputs nand_allowed( std::span<const PinRun> runs, std::size_t t )
{
    const bool some_low = std::any_of( runs.begin(), runs.end(),
                                       [ & ]( const PinRun& r ) { return r.level == Level::low && r.run >= t; } );
    if ( some_low )
        return AllowedOutputs::only( Level::high );
    const bool all_high = std::all_of( runs.begin(), runs.end(),
                                       [ & ]( const PinRun& r ) { return r.level == Level::high && r.run >= t; } );
    if ( all_high )
        return AllowedOutputs::only( Level::low );
    return AllowedOutputs::any();
}

std::vector<PinRun> gate_runs( const State& gate_state )
{
    if ( gate_state.words.size() % 2 != 1 )
        throw Error( "not a gate state" );
    return decode_runs( gate_state.words, gate_state.words.size() / 2 );
}

AllowedOutputs nand_allowed( const State& gate_state, std::size_t t )
{
    return nand_allowed( gate_runs( gate_state ), t );
}

Verdict check_gate_constraints( const Transducer& m, std::size_t t, std::size_t depth )
{
    if ( m.outputs().size() != 1 )
        throw PinMismatch( "gate constraint check needs a single-output machine, got " + m.outputs().to_string() );
    const PinId out = m.outputs()[ 0 ];

    std::vector<Property> props;
    std::vector<Condition> all_high;
    for ( const auto& p : m.inputs() )
    {
        props.push_back( { "nand_low_input:" + p,
                           { HoldAtLeast{ p, Level::low, t } },
                           OutputEquals{ out, Level::high },
                           { { "t", static_cast<std::int64_t>( t ) } } } );
        all_high.push_back( HoldAtLeast{ p, Level::high, t } );
    }
    props.push_back(
            { "nand_all_high", std::move( all_high ), OutputEquals{ out, Level::low }, { { "t", static_cast<std::int64_t>( t ) } } } );
    return check_universal( m, props, depth );
}

} // namespace moore
