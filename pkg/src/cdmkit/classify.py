"""Leave-one-out K-nearest-neighbor classification over a distance matrix.

Prediction is a majority vote among the k nearest reference items. All
ties are resolved deterministically: equal distances at the boundary rank
admit the smaller item index, tied label counts prefer the label whose
neighbors sit at the smaller distance sum, and a residual tie falls to
the lexicographically smallest label. The rules matter only on exact
distance collisions but make every run byte-for-byte reproducible.
"""

from dataclasses import dataclass

from .measures import DistanceMatrix


@dataclass(frozen=True)
class LooItem:
    item_id: str
    true_label: str
    predicted_label: str
    correct: bool


@dataclass(frozen=True)
class LooResult:
    per_item: tuple[LooItem, ...]
    k: int

    @property
    def n(self) -> int:
        return len(self.per_item)

    @property
    def correct_count(self) -> int:
        return sum(item.correct for item in self.per_item)

    @property
    def accuracy(self) -> float:
        return self.correct_count / self.n

    @property
    def outcomes(self) -> list[bool]:
        return [item.correct for item in self.per_item]


def vote(
    neighbor_labels: list[str], neighbor_distances: list[float]
) -> str:
    """Majority label; ties by smallest distance sum, then smallest label."""
    counts: dict[str, int] = {}
    sums: dict[str, float] = {}
    for label, dist in zip(neighbor_labels, neighbor_distances):
        counts[label] = counts.get(label, 0) + 1
        sums[label] = sums.get(label, 0.0) + dist
    best = max(counts.values())
    tied = [label for label, count in counts.items() if count == best]
    return min(tied, key=lambda label: (sums[label], label))


def knn_predict(matrix: DistanceMatrix, query_index: int, k: int) -> str:
    n = matrix.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    if not 0 <= query_index < n:
        raise IndexError(f"query index {query_index} out of range")
    row = matrix.values[query_index]
    ranked = sorted(
        (float(row[j]), j) for j in range(n) if j != query_index
    )
    top = ranked[:k]
    labels = [matrix.labels[j][1] for _, j in top]
    distances = [d for d, _ in top]
    return vote(labels, distances)


def leave_one_out(matrix: DistanceMatrix, k: int = 5) -> LooResult:
    """Classify every item against all the others."""
    n = matrix.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    items = []
    for i, (item_id, true_label) in enumerate(matrix.labels):
        predicted = knn_predict(matrix, i, k)
        items.append(
            LooItem(
                item_id=item_id,
                true_label=true_label,
                predicted_label=predicted,
                correct=predicted == true_label,
            )
        )
    return LooResult(per_item=tuple(items), k=k)
