#include "moore/checker.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_set>

#include "moore/observers.hpp"

namespace moore
{

// Nondeterministic machines

NondetTransducer::NondetTransducer( std::shared_ptr<const NondetMachine> impl ) : _impl{ std::move( impl ) }
{
    if ( !_impl )
        throw Error( "null machine" );
}

namespace
{

class DeterministicAdapter final : public NondetMachine
{
public:
    explicit DeterministicAdapter( Transducer m ) : _m{ std::move( m ) } {}

    const PinSet& inputs() const override { return _m.inputs(); }
    const PinSet& outputs() const override { return _m.outputs(); }
    State initial() const override { return _m.initial_state(); }
    void successors( const State& s, std::span<const Level> input, std::vector<State>& out ) const override
    {
        out.push_back( _m.step( s, input ) );
    }
    std::vector<Level> output( const State& s ) const override { return _m.output_levels( s ); }

private:
    Transducer _m;
};

// Shares the state layout of the HoldLast gate: stepping that gate advances
// the run counters, then the output word is overwritten with each allowed
// level.
class AdversarialNand final : public NondetMachine
{
public:
    explicit AdversarialNand( const GateParams& p ) : _t{ p.delay_t }, _core{ make_nand( hold_last( p ) ) } {}

    const PinSet& inputs() const override { return _core.inputs(); }
    const PinSet& outputs() const override { return _core.outputs(); }
    State initial() const override { return _core.initial_state(); }
    void successors( const State& s, std::span<const Level> input, std::vector<State>& out ) const override
    {
        State next = _core.step( s, input );
        for ( Level l : nand_allowed( next, _t ).levels() )
        {
            next.words.back() = to_int( l );
            out.push_back( next );
        }
    }
    std::vector<Level> output( const State& s ) const override { return _core.output_levels( s ); }

private:
    static GateParams hold_last( GateParams p )
    {
        p.policy = TransientPolicy::hold_last;
        return p;
    }

    std::size_t _t;
    Transducer _core;
};

class NondetProduct final : public NondetMachine
{
public:
    NondetProduct( std::vector<NondetTransducer> factors, WiringPlan plan )
            : _factors{ std::move( factors ) }, _plan{ std::move( plan ) }
    {
        std::vector<State> init;
        for ( const auto& f : _factors )
            init.push_back( f.initial_state() );
        _init = join_states( init );
    }

    const PinSet& inputs() const override { return _plan.inputs(); }
    const PinSet& outputs() const override { return _plan.outputs(); }
    State initial() const override { return _init; }

    void successors( const State& s, std::span<const Level> input, std::vector<State>& out ) const override
    {
        const auto parts = split_state( s, _factors.size() );
        const auto flat = flat_outputs( parts );
        std::vector<std::vector<State>> options( _factors.size() );
        std::vector<Level> local;
        for ( std::size_t i = 0; i < _factors.size(); ++i )
        {
            _plan.assemble( i, input, flat, local );
            _factors[ i ].successors( parts[ i ], local, options[ i ] );
        }
        // Odometer over the choices, last factor fastest.
        std::vector<std::size_t> pick( _factors.size(), 0 );
        std::vector<State> chosen( _factors.size() );
        for ( ;; )
        {
            for ( std::size_t i = 0; i < _factors.size(); ++i )
                chosen[ i ] = options[ i ][ pick[ i ] ];
            out.push_back( join_states( chosen ) );
            std::size_t i = _factors.size();
            while ( i > 0 )
            {
                --i;
                if ( ++pick[ i ] < options[ i ].size() )
                    break;
                pick[ i ] = 0;
                if ( i == 0 )
                    return;
            }
        }
    }

    std::vector<Level> output( const State& s ) const override
    {
        return _plan.expose( flat_outputs( split_state( s, _factors.size() ) ) );
    }

private:
    std::vector<Level> flat_outputs( const std::vector<State>& parts ) const
    {
        std::vector<Level> flat;
        for ( std::size_t i = 0; i < _factors.size(); ++i )
        {
            auto o = _factors[ i ].output_levels( parts[ i ] );
            flat.insert( flat.end(), o.begin(), o.end() );
        }
        return flat;
    }

    std::vector<NondetTransducer> _factors;
    WiringPlan _plan;
    State _init;
};

} // namespace

NondetTransducer::NondetTransducer( const Transducer& m ) : NondetTransducer( std::make_shared<DeterministicAdapter>( m ) )
{
}

NondetTransducer make_adversarial_nand( const GateParams& p )
{
    validate( p );
    return NondetTransducer( std::make_shared<AdversarialNand>( p ) );
}

NondetTransducer compose_nondet( const std::vector<NondetTransducer>& factors, const PinSet& inputs,
                                 const ConnectionMap& wiring, const OutputSelection& exposure )
{
    std::vector<FactorPins> pins;
    for ( const auto& f : factors )
        pins.push_back( { f.inputs(), f.outputs() } );
    WiringPlan wp( inputs, std::move( pins ), wiring, exposure );
    return NondetTransducer( std::make_shared<NondetProduct>( factors, std::move( wp ) ) );
}

NondetTransducer adversarial_latch( const LatchSpec& l )
{
    const PinSet pins = numbered_pins( 2 );
    std::vector<NondetTransducer> factors{
            make_adversarial_nand( { pins, l.base_delay_t, l.gate_initials.first, TransientPolicy::adversarial } ),
            make_adversarial_nand( { pins, l.base_delay_t, l.gate_initials.second, TransientPolicy::adversarial } ),
    };
    return compose_nondet( factors, l.spec.input_pins, l.spec.wiring, l.spec.exposure );
}

// Property evaluation

namespace
{

constexpr std::size_t no_pin = std::numeric_limits<std::size_t>::max();

struct CompiledCondition
{
    enum class Kind
    {
        hold,
        stable,
        latched,
    } kind;
    std::size_t pin = 0;
    Level level = Level::low;
    std::size_t bound = 0;
    std::size_t tracker = 0;
};

struct CompiledProperty
{
    std::vector<CompiledCondition> antecedent;
    enum class Kind
    {
        output_equals,
        stable_output,
        star,
    } kind;
    std::size_t pin = no_pin;
    Level level = Level::low;
    std::int64_t offset = 0;
    bool relative = false;
    std::size_t n_bits = 0;
};

struct ObserverState
{
    obs::PinRuns runs;
    obs::StableCounter stable;
    std::vector<obs::LatchedTracker> latched;
    obs::OutputStability outputs;

    void push( std::span<const Level> sample, std::span<const Level> out )
    {
        runs.push( sample );
        stable.push( sample );
        for ( auto& l : latched )
            l.push( sample, runs );
        outputs.push( out );
    }
};

class Evaluator
{
public:
    Evaluator( const PinSet& inputs, const PinSet& outputs, std::span<const Property> props )
            : _inputs{ inputs }, _outputs{ outputs }
    {
        for ( const auto& p : props )
            _props.push_back( compile( p ) );
    }

    [[nodiscard]] ObserverState initial( std::vector<Level> initial_output ) const
    {
        ObserverState o{ obs::PinRuns( _inputs.size() ), {}, {}, obs::OutputStability( std::move( initial_output ) ) };
        for ( const auto& [ b, t ] : _latched )
            o.latched.emplace_back( b, t, _inputs.index_of( "set" ), _inputs.index_of( "reset" ) );
        return o;
    }

    /// Index of the first violated property, if any.
    [[nodiscard]] std::optional<std::size_t> violated( const ObserverState& o, std::span<const Level> out ) const
    {
        for ( std::size_t i = 0; i < _props.size(); ++i )
            if ( !holds( _props[ i ], o, out ) )
                return i;
        return std::nullopt;
    }

    [[nodiscard]] bool has_relative() const
    {
        return std::any_of( _props.begin(), _props.end(), []( const CompiledProperty& p ) { return p.relative; } );
    }

    /// Observer summary for duplicate detection in memoized mode. Counters
    /// are capped where no property can tell larger values apart.
    void key( const ObserverState& o, std::vector<std::int32_t>& dst ) const
    {
        const auto cap = [ & ]( std::size_t v ) {
            return static_cast<std::int32_t>( std::min( v, _cap ) );
        };
        for ( std::size_t p = 0; p < o.runs.size(); ++p )
        {
            const std::size_t hi = o.runs.hold( p, Level::high );
            dst.push_back( hi > 0 ? 1 : 0 );
            dst.push_back( cap( hi > 0 ? hi : o.runs.hold( p, Level::low ) ) );
        }
        dst.push_back( cap( o.stable.value() ) );
        if ( !o.stable.empty() )
            for ( Level l : o.stable.last() )
                dst.push_back( to_int( l ) );
        for ( const auto& l : o.latched )
            dst.push_back( to_int( l.value() ) );
        dst.push_back( cap( o.outputs.whole() ) );
        for ( std::size_t p = 0; p < _outputs.size(); ++p )
            dst.push_back( cap( o.outputs.pin( p ) ) );
    }

private:
    CompiledProperty compile( const Property& p )
    {
        CompiledProperty c{};
        for ( const auto& cond : p.antecedent )
        {
            CompiledCondition cc{};
            if ( const auto* h = std::get_if<HoldAtLeast>( &cond ) )
            {
                cc.kind = CompiledCondition::Kind::hold;
                cc.pin = _inputs.index_of( h->pin );
                cc.level = h->level;
                cc.bound = h->bound;
            }
            else if ( const auto* s = std::get_if<StableAtLeast>( &cond ) )
            {
                cc.kind = CompiledCondition::Kind::stable;
                cc.bound = s->bound;
            }
            else
            {
                const auto& l = std::get<LatchedEquals>( cond );
                cc.kind = CompiledCondition::Kind::latched;
                cc.bound = 1;
                cc.tracker = tracker_for( l.b, l.t_latch );
            }
            _cap = std::max( _cap, cc.bound );
            c.antecedent.push_back( cc );
        }
        if ( const auto* e = std::get_if<OutputEquals>( &p.consequent ) )
        {
            c.kind = CompiledProperty::Kind::output_equals;
            c.pin = _outputs.index_of( e->pin );
            c.level = e->level;
        }
        else if ( const auto* s = std::get_if<StableOutputAtLeast>( &p.consequent ) )
        {
            c.kind = CompiledProperty::Kind::stable_output;
            c.pin = s->pin ? _outputs.index_of( *s->pin ) : no_pin;
            c.offset = s->offset;
            c.relative = s->relative;
            if ( !s->relative && s->offset > 0 )
                _cap = std::max( _cap, static_cast<std::size_t>( s->offset ) );
        }
        else
        {
            c.kind = CompiledProperty::Kind::star;
            c.n_bits = std::get<StarEquality>( p.consequent ).n_bits;
        }
        return c;
    }

    std::size_t tracker_for( Level b, std::size_t t )
    {
        for ( std::size_t i = 0; i < _latched.size(); ++i )
            if ( _latched[ i ].first == b && _latched[ i ].second == t )
                return i;
        _latched.emplace_back( b, t );
        _cap = std::max( _cap, t );
        return _latched.size() - 1;
    }

    bool holds( const CompiledProperty& p, const ObserverState& o, std::span<const Level> out ) const
    {
        std::size_t value = std::numeric_limits<std::size_t>::max();
        for ( const auto& c : p.antecedent )
        {
            std::size_t v = 0;
            switch ( c.kind )
            {
            case CompiledCondition::Kind::hold:
                v = o.runs.hold( c.pin, c.level );
                break;
            case CompiledCondition::Kind::stable:
                v = o.stable.value();
                break;
            case CompiledCondition::Kind::latched:
                v = static_cast<std::size_t>( to_int( o.latched[ c.tracker ].value() ) );
                break;
            }
            if ( v < c.bound )
                return true;
            value = std::min( value, v );
        }
        if ( p.antecedent.empty() )
            value = 0;

        switch ( p.kind )
        {
        case CompiledProperty::Kind::output_equals:
            return out[ p.pin ] == p.level;
        case CompiledProperty::Kind::stable_output: {
            const auto have = static_cast<std::int64_t>( p.pin == no_pin ? o.outputs.whole() : o.outputs.pin( p.pin ) );
            const std::int64_t need = p.relative ? static_cast<std::int64_t>( value ) - p.offset : p.offset;
            return have >= need;
        }
        case CompiledProperty::Kind::star:
            if ( o.stable.empty() )
                return true;
            return adder_star_holds( p.n_bits, Sample( _inputs, o.stable.last() ),
                                     OutputVector( _outputs, std::vector<Level>( out.begin(), out.end() ) ) );
        }
        return true;
    }

    PinSet _inputs;
    PinSet _outputs;
    std::vector<CompiledProperty> _props;
    std::vector<std::pair<Level, std::size_t>> _latched;
    std::size_t _cap = 0;
};

struct Step
{
    std::uint32_t sample;
    std::uint32_t choice;
};

Counterexample make_counterexample( const PinSet& pins, const std::vector<std::vector<Level>>& samples,
                                    const std::vector<Step>& path )
{
    Counterexample c{ Trace( pins ), {} };
    for ( const auto& s : path )
    {
        c.trace.push_back( samples[ s.sample ] );
        c.choices.push_back( s.choice );
    }
    return c;
}

class ExhaustiveSearch
{
public:
    ExhaustiveSearch( const NondetTransducer& m, const Evaluator& ev, std::size_t depth, std::uint64_t max_nodes )
            : _m{ m }, _ev{ ev }, _limit{ depth }, _max_nodes{ max_nodes }, _samples{ all_samples( m.inputs() ) }
    {
    }

    Verdict run()
    {
        const State s = _m.initial_state();
        auto out = _m.output_levels( s );
        visit( s, _ev.initial( out ), out );

        Verdict v;
        v.traces_explored = _nodes;
        if ( _best )
        {
            v.status = Status::fail;
            v.counterexample = make_counterexample( _m.inputs(), _samples, *_best );
            v.detail = "violated: property #" + std::to_string( _best_property );
        }
        else if ( _aborted )
        {
            v.status = Status::budget;
            v.detail = "node budget of " + std::to_string( _max_nodes ) + " exhausted";
        }
        else
            v.status = Status::pass;
        return v;
    }

    [[nodiscard]] std::size_t violated_property() const { return _best_property; }

private:
    void visit( const State& s, const ObserverState& o, std::span<const Level> out )
    {
        if ( _aborted )
            return;
        if ( ++_nodes > _max_nodes )
        {
            _aborted = true;
            return;
        }
        if ( auto bad = _ev.violated( o, out ) )
        {
            // Preorder reaches shorter-or-equal traces in lexicographic
            // order, so the first violation at each length is the one kept.
            _best = _path;
            _best_property = *bad;
            _limit = _path.size() == 0 ? 0 : _path.size() - 1;
            return;
        }
        if ( _path.size() >= _limit || ( _best && _path.size() + 1 >= _best->size() ) )
            return;
        std::vector<State> next;
        for ( std::uint32_t a = 0; a < _samples.size(); ++a )
        {
            // a sibling may have just set an equally long best
            if ( _best && _path.size() + 1 >= _best->size() )
                return;
            next.clear();
            _m.successors( s, _samples[ a ], next );
            for ( std::uint32_t c = 0; c < next.size(); ++c )
            {
                const auto nout = _m.output_levels( next[ c ] );
                ObserverState no = o;
                no.push( _samples[ a ], nout );
                _path.push_back( { a, c } );
                visit( next[ c ], no, nout );
                _path.pop_back();
                if ( _aborted || ( _best && _path.size() + 1 >= _best->size() ) )
                    return;
            }
        }
    }

    const NondetTransducer& _m;
    const Evaluator& _ev;
    std::size_t _limit;
    std::uint64_t _max_nodes;
    std::vector<std::vector<Level>> _samples;
    std::vector<Step> _path;
    std::optional<std::vector<Step>> _best;
    std::size_t _best_property = 0;
    std::uint64_t _nodes = 0;
    bool _aborted = false;
};

Verdict memoized_search( const NondetTransducer& m, const Evaluator& ev, std::size_t depth, std::uint64_t max_nodes )
{
    if ( ev.has_relative() )
        throw Error( "memoized search cannot cap counters for relative stability bounds" );
    const auto samples = all_samples( m.inputs() );

    struct Node
    {
        State state;
        ObserverState obs;
        std::size_t parent;
        Step step;
        std::size_t depth;
    };
    auto key_of = [ & ]( const Node& n ) {
        State k;
        k.words.push_back( static_cast<std::int32_t>( n.state.words.size() ) );
        k.words.insert( k.words.end(), n.state.words.begin(), n.state.words.end() );
        ev.key( n.obs, k.words );
        return k;
    };
    auto path_of = [ & ]( const std::vector<Node>& nodes, std::size_t i ) {
        std::vector<Step> path;
        for ( ; nodes[ i ].depth > 0; i = nodes[ i ].parent )
            path.push_back( nodes[ i ].step );
        std::reverse( path.begin(), path.end() );
        return path;
    };

    Verdict v;
    std::vector<Node> nodes;
    std::unordered_set<State, StateHash> seen;
    {
        State s = m.initial_state();
        auto out = m.output_levels( s );
        nodes.push_back( { s, ev.initial( out ), 0, { 0, 0 }, 0 } );
        seen.insert( key_of( nodes[ 0 ] ) );
    }
    bool complete = true;
    std::vector<State> next;
    for ( std::size_t i = 0; i < nodes.size(); ++i )
    {
        ++v.traces_explored;
        const auto out = m.output_levels( nodes[ i ].state );
        if ( auto bad = ev.violated( nodes[ i ].obs, out ) )
        {
            v.status = Status::fail;
            v.counterexample = make_counterexample( m.inputs(), samples, path_of( nodes, i ) );
            v.detail = "violated: property #" + std::to_string( *bad );
            return v;
        }
        if ( nodes[ i ].depth == depth )
        {
            complete = false;
            continue;
        }
        for ( std::uint32_t a = 0; a < samples.size(); ++a )
        {
            next.clear();
            m.successors( nodes[ i ].state, samples[ a ], next );
            for ( std::uint32_t c = 0; c < next.size(); ++c )
            {
                Node child{ next[ c ], nodes[ i ].obs, i, { a, c }, nodes[ i ].depth + 1 };
                child.obs.push( samples[ a ], m.output_levels( child.state ) );
                if ( !seen.insert( key_of( child ) ).second )
                    continue;
                if ( nodes.size() >= max_nodes )
                {
                    v.status = Status::budget;
                    v.detail = "node budget of " + std::to_string( max_nodes ) + " exhausted";
                    return v;
                }
                nodes.push_back( std::move( child ) );
            }
        }
    }
    v.status = Status::pass;
    v.bounded = !complete;
    return v;
}

} // namespace

Verdict check_universal( const NondetTransducer& m, std::span<const Property> props, std::size_t depth,
                         const CheckOptions& options )
{
    const Evaluator ev( m.inputs(), m.outputs(), props );
    Verdict v;
    if ( options.mode == SearchMode::memoized )
        v = memoized_search( m, ev, depth, options.max_nodes );
    else
        v = ExhaustiveSearch( m, ev, depth, options.max_nodes ).run();
    if ( v.status == Status::fail )
    {
        const auto idx = static_cast<std::size_t>( std::stoul( v.detail.substr( v.detail.find( '#' ) + 1 ) ) );
        v.detail = "violated: " + props[ idx ].name;
    }
    return v;
}

Verdict check_universal( const NondetTransducer& m, const Property& prop, std::size_t depth,
                         const CheckOptions& options )
{
    return check_universal( m, std::span<const Property>( &prop, 1 ), depth, options );
}

std::vector<OutputVector> replay_outputs( const NondetTransducer& m, const Counterexample& cex )
{
    const Trace w = cex.trace.reordered( m.inputs() );
    std::vector<OutputVector> outs;
    State s = m.initial_state();
    outs.emplace_back( m.outputs(), m.output_levels( s ) );
    std::vector<State> next;
    for ( std::size_t i = 0; i < w.size(); ++i )
    {
        next.clear();
        m.successors( s, w.row( i ), next );
        const std::size_t c = i < cex.choices.size() ? cex.choices[ i ] : 0;
        if ( c >= next.size() )
            throw Error( "counterexample branch choice out of range at step " + std::to_string( i ) );
        s = next[ c ];
        outs.emplace_back( m.outputs(), m.output_levels( s ) );
    }
    return outs;
}

bool replay_violates( const NondetTransducer& m, std::span<const Property> props, const Counterexample& cex )
{
    const Evaluator ev( m.inputs(), m.outputs(), props );
    const auto outs = replay_outputs( m, cex );
    const Trace w = cex.trace.reordered( m.inputs() );
    ObserverState o = ev.initial( std::vector<Level>( outs[ 0 ].levels().begin(), outs[ 0 ].levels().end() ) );
    for ( std::size_t i = 0; i < w.size(); ++i )
        o.push( w.row( i ), outs[ i + 1 ].levels() );
    return ev.violated( o, outs.back().levels() ).has_value();
}

// Named checks

std::vector<Property> stability_lemma_properties( std::size_t t, std::size_t k )
{
    std::vector<Property> props;
    const auto bound = static_cast<std::int64_t>( t + k );
    for ( const char* pin : { "1", "2" } )
        props.push_back( { std::string( "stability_lemma:" ) + pin,
                           { HoldAtLeast{ pin, Level::low, t + k } },
                           StableOutputAtLeast{ std::nullopt, bound, true },
                           { { "t", static_cast<std::int64_t>( t ) }, { "k", static_cast<std::int64_t>( k ) } } } );
    return props;
}

Verdict check_stability_lemma( std::size_t t, std::size_t k, std::size_t depth, TransientPolicy policy,
                               const CheckOptions& options )
{
    const GateParams p{ numbered_pins( 2 ), t, Level::high, policy };
    const NondetTransducer m =
            policy == TransientPolicy::hold_last ? NondetTransducer( make_nand( p ) ) : make_adversarial_nand( p );
    const auto props = stability_lemma_properties( t, k );
    return check_universal( m, props, depth, options );
}

std::vector<Property> latch_claim_properties( std::size_t t_latch )
{
    std::vector<Property> props;
    for ( Level b : { Level::high, Level::low } )
        props.push_back( { std::string( "latch_claim:b=" ) + to_char( b ),
                           { LatchedEquals{ b, t_latch } },
                           OutputEquals{ "q", b },
                           { { "t_latch", static_cast<std::int64_t>( t_latch ) } } } );
    return props;
}

LatchClaimResult check_latch_claim( std::size_t t, std::size_t slack, TransientPolicy policy,
                                    std::pair<Level, Level> gate_initials, const CheckOptions& options )
{
    const LatchSpec l = make_sr_latch( t, gate_initials );
    const NondetTransducer m =
            policy == TransientPolicy::hold_last ? NondetTransducer( compose( l.spec ) ) : adversarial_latch( l );
    LatchClaimResult r;
    r.t_latch = 3 * t + 2;
    r.depth = r.t_latch + slack;
    const auto claim = latch_claim_properties( r.t_latch );
    r.claim = check_universal( m, claim, r.depth, options );
    const auto probe = latch_claim_properties( r.t_latch - 1 );
    r.tightness = check_universal( m, probe, r.depth, options );
    return r;
}

std::vector<Property> adder_lemma_properties( std::size_t t, std::size_t k )
{
    std::vector<Property> props;
    for ( const char* pin : { "sum", "carry_out" } )
        props.push_back( { std::string( "adder_lemma:" ) + pin,
                           { StableAtLeast{ t + k } },
                           StableOutputAtLeast{ PinId( pin ), static_cast<std::int64_t>( k ), false },
                           { { "t", static_cast<std::int64_t>( t ) }, { "k", static_cast<std::int64_t>( k ) } } } );
    return props;
}

Verdict check_adder_lemma( std::size_t t, std::size_t k, std::size_t depth, const CheckOptions& options )
{
    const auto m = make_adder_bit( { t, Level::low, Level::low } );
    const auto props = adder_lemma_properties( t, k );
    return check_universal( NondetTransducer( m ), props, depth, options );
}

Verdict check_ripple_star( std::size_t n, std::size_t t, const RippleStarOptions& options )
{
    const RippleSpec v = make_ripple_adder( n, t );
    const Transducer m = compose( v.spec );
    const PinSet& pins = m.inputs();
    const auto samples = all_samples( pins );
    const std::size_t hold = n * t + n;
    std::mt19937_64 rng( options.seed );

    Verdict verdict;
    for ( const auto& assignment : samples )
    {
        for ( std::size_t trial = 0; trial < options.trials; ++trial )
        {
            Trace w( pins );
            const std::size_t len = static_cast<std::size_t>( rng() % ( options.prefix_length + 1 ) );
            for ( std::size_t i = 0; i < len; ++i )
                w.push_back( samples[ rng() % samples.size() ] );
            for ( std::size_t i = 0; i < hold; ++i )
                w.push_back( assignment );
            ++verdict.traces_explored;
            const State s = follow( m, m.initial_state(), w );
            if ( !adder_star_holds( n, Sample( pins, assignment ), m.output( s ) ) )
            {
                verdict.status = Status::fail;
                verdict.counterexample = Counterexample{ w, {} };
                verdict.detail = "adder identity fails after holding " + Sample( pins, assignment ).to_string();
                return verdict;
            }
        }
    }
    verdict.status = Status::pass;
    verdict.detail = "seed " + std::to_string( options.seed );
    return verdict;
}

} // namespace moore
