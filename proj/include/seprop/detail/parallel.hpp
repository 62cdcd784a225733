/*!
  \file parallel.hpp
  \brief Static partitioning of an index range across worker threads
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace seprop::detail
{

/*! \brief Calls `body(worker, begin, end)` on contiguous chunks of [0, count).

  Worker w always receives the same chunk for a given (count, jobs), and
  the first exception thrown by any worker is rethrown on the caller.
*/
template<typename Fn>
void parallel_chunks( std::size_t count, unsigned jobs, Fn&& body )
{
  auto const workers = static_cast<std::size_t>( std::max( 1u, std::min<unsigned>( jobs, count ? count : 1 ) ) );
  if ( workers == 1 )
  {
    body( std::size_t{ 0 }, std::size_t{ 0 }, count );
    return;
  }

  std::exception_ptr failure;
  std::mutex guard;
  {
    std::vector<std::jthread> threads;
    threads.reserve( workers );
    for ( std::size_t w = 0; w < workers; ++w )
    {
      auto const begin = count * w / workers;
      auto const end = count * ( w + 1 ) / workers;
      threads.emplace_back( [&, w, begin, end] {
        try
        {
          body( w, begin, end );
        }
        catch ( ... )
        {
          std::lock_guard lock( guard );
          if ( !failure )
            failure = std::current_exception();
        }
      } );
    }
  }
  if ( failure )
    std::rethrow_exception( failure );
}

} // namespace seprop::detail
