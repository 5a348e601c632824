/**
 * @file message.hpp
 * @brief Regex-shaped message patterns for throw statements.
 *
 * Constant fragments appear verbatim (regex-escaped); anything dynamic
 * becomes `.*`. Variables are chased through straight-line definitions in
 * source order. Patterns describe the whole message; adjacent wildcards
 * collapse so the same throw always yields the same pattern text.
 */
#pragma once

#include <string>

#include "exlife/exir.hpp"

namespace exlife {

std::string regex_escape(const std::string& raw);

/// Pattern of the message a throw statement produces. `stmt` must belong
/// to `method` and hold a StThrow body.
std::string message_pattern(const ExirMethod& method, const ExirStatement& stmt);

}  // namespace exlife
