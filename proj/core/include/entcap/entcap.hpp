#pragma once

#include "entcap/capacity.hpp"
#include "entcap/channel.hpp"
#include "entcap/channel_io.hpp"
#include "entcap/compound.hpp"
#include "entcap/divergence.hpp"
#include "entcap/matrix.hpp"
#include "entcap/random.hpp"
#include "entcap/state.hpp"
#include "entcap/verify.hpp"
