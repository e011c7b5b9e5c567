// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <string>

#include "tagcalc/syntax.hpp"

namespace tagcalc {

// Surface-syntax printers. parse(pretty(x)) == x holds structurally for all
// ASTs the parser can produce.
std::string pretty(const Name& n);
std::string pretty(const Ty& t);
std::string pretty(const Tm& e);
std::string pretty(const NameRef& n);
std::string pretty(const TyRef& t);
std::string pretty(const TmRef& e);

}  // namespace tagcalc
