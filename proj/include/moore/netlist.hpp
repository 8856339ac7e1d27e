#pragma once

// JSON netlists and their lowering to wire-only products.
//
//   {
//     "name": "latch",
//     "inputs": ["set", "reset"],
//     "outputs": ["q"],
//     "instances": [{"name": "n1", "kind": "nand", "params": {"t": 1}}, ...],
//     "wires": [{"from": "reset", "to": "n1.1"}, {"from": "n1.out", "to": "q"}, ...],
//     "netlists": [ ...sub-netlists referenced by kind "netlist"... ]
//   }
//
// A bare name in a wire is a netlist pin; "inst.pin" is an instance pin.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "moore/core.hpp"
#include "moore/product.hpp"

namespace moore::cli
{

class ParseError : public Error
{
public:
    ParseError( const std::string& what, std::size_t line, std::size_t column );
    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }

private:
    std::size_t _line;
    std::size_t _column;
};

class ValidationError : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

struct Instance
{
    std::string name;
    std::string kind;
    std::map<std::string, std::int64_t> params;
    /// Sub-netlist name for kind "netlist".
    std::string ref;
};

struct Wire
{
    std::string from;
    std::string to;
};

struct Netlist
{
    std::string name;
    std::vector<PinId> inputs;
    std::vector<PinId> outputs;
    std::vector<Instance> instances;
    std::vector<Wire> wires;
    std::vector<Netlist> netlists;
};

/// Parses and validates. Throws ParseError or ValidationError.
[[nodiscard]] Netlist parse_netlist( std::string_view text );
[[nodiscard]] Netlist load_netlist( const std::filesystem::path& path );

/// Top-level product; sub-netlists and builtin devices become single factors.
[[nodiscard]] ProductSpec lower( const Netlist& n );
[[nodiscard]] Transducer build( const Netlist& n );

/// No feedback at the top level nor inside any instance.
[[nodiscard]] bool feedback_free( const Netlist& n );

[[nodiscard]] std::string read_file( const std::filesystem::path& path );
void write_file( const std::filesystem::path& path, std::string_view text );

} // namespace moore::cli
