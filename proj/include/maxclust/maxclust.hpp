#ifndef MAXCLUST_MAXCLUST_HPP_
#define MAXCLUST_MAXCLUST_HPP_

#include "maxclust/clusters.hpp"
#include "maxclust/enumerate.hpp"
#include "maxclust/error.hpp"
#include "maxclust/graph.hpp"
#include "maxclust/triples.hpp"
#include "maxclust/words_roots.hpp"

#endif  // MAXCLUST_MAXCLUST_HPP_
