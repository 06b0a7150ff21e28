#pragma once

#include "ciliate/arrangement.hpp"
#include "ciliate/compress.hpp"
#include "ciliate/crossval.hpp"
#include "ciliate/direct.hpp"
#include "ciliate/errors.hpp"
#include "ciliate/io.hpp"
#include "ciliate/iso.hpp"
#include "ciliate/overlap.hpp"
#include "ciliate/pointer_set.hpp"
#include "ciliate/random.hpp"
#include "ciliate/reduction.hpp"
#include "ciliate/rewriting.hpp"
#include "ciliate/strings.hpp"
