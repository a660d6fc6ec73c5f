"""Distance between mode and mean for strongly log-concave measures."""
import math


def mode_mean_bound(d: int, m: float) -> float:
    """(sqrt(d) + 2 sqrt(2 log 2)) / sqrt(m): bound on E|x - x*| for an m-strongly log-concave measure."""
    return (math.sqrt(d) + 2 * math.sqrt(2 * math.log(2))) / math.sqrt(m)
