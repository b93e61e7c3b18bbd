#pragma once

// Umbrella header for the entropica library.

#include "entropica/codec.hpp"
#include "entropica/coding.hpp"
#include "entropica/distribution.hpp"
#include "entropica/entropy.hpp"
#include "entropica/error.hpp"
#include "entropica/sources.hpp"
#include "entropica/text_io.hpp"
