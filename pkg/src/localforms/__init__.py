"""localforms: principal-bundle connections through local data.

Represents a bundle with connection purely by an atlas, a matrix group, a
transition-function family and Lie-algebra-valued local connection forms,
and verifies or constructs everything derivable from that data: cocycle and
overlap compatibility, gauge laws, relatedness under bundle morphisms,
pushforward and associated connections, Christoffel conversions, finite
projective towers, horizontal lifts, parallel transport and the connection
operator on local sections.
"""

__version__ = "0.1.0"
