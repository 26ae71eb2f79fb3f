import pytest

from intervalsize import catalog, cluster
from intervalsize.constructed import eval_triple
from intervalsize.errors import NotAClusterError, UnknownInstance

from oracles import strictly_between, words, words_up_to


def contiguous_accepting(m, x):
    """Accepting paths occupy one contiguous range of the lex-sorted paths."""
    flags = [m.accept(x, w) for w in words(m.path_len(x))]
    hits = [i for i, f in enumerate(flags) if f]
    return not hits or hits[-1] - hits[0] + 1 == len(hits)


@pytest.mark.parametrize("name", sorted(cluster.MACHINES))
def test_cluster_check_matches_contiguity_oracle(name):
    m = cluster.machine(name)
    witness = cluster.shortlex_witness(m)
    for x in words_up_to(3):
        assert cluster.is_cluster_witness(witness, x) == contiguous_accepting(m, x)


def test_non_cluster_count_is_refused():
    witness = cluster.shortlex_witness(cluster.machine("parity"))
    with pytest.raises(NotAClusterError):
        cluster.cl_count(witness, "0")


def test_partition_runs_alternate_and_cover_all_paths():
    m = cluster.machine("ends-agree")
    runs = cluster.cluster_partition(m, cluster.shortlex_witness(m).order, "1")
    assert [w for _, ws in runs for w in ws] == words(m.path_len("1"))
    assert all(a[0] != b[0] for a, b in zip(runs, runs[1:]))


@pytest.mark.parametrize("construction,instance", [
    ("fp-order", "ones-count"), ("sharp-p-order", "parity"), ("offset-order", "constant-1"),
    ("upsv-order", "ones-plus-one"), ("increment-order", "length"),
])
def test_interval_to_cluster_counts_the_interval(construction, instance):
    triple = catalog.build_triple(construction, instance)
    witness = cluster.ift_to_cluster(triple)
    for x in words_up_to(2):
        universe = triple.block_universe(x)
        want = strictly_between(triple.order.leq, triple.b(x), triple.t(x), universe)
        assert cluster.cl_count(witness, x) == want


def test_initial_segment_order_is_cluster_for_its_machine():
    triple = catalog.build_triple("fp-order", "ones-count")
    witness = cluster.ift_to_cluster(triple)
    order = witness.order
    x = "11"
    tx = triple.t(x)
    acc = cluster.acc_set(witness.machine, x)
    embedded = [witness.embed(x, w) for w in acc]
    ranked = sorted(embedded, key=order.sort_key)
    for u, v in zip(ranked, ranked[1:]):
        assert order.precedes(u, v)
        assert order.successor(u) == v
        assert order.predecessors(v) == [u]
    assert all(e.startswith(tx) for e in embedded)


@pytest.mark.parametrize("name", sorted(cluster.MACHINES))
def test_detectors_have_at_most_one_accepting_path(name):
    witness = cluster.shortlex_witness(cluster.machine(name))
    for x in words_up_to(1):
        if not contiguous_accepting(witness.machine, x):
            continue
        k = sum(witness.machine.accept(x, w) for w in words(witness.machine.path_len(x)))
        for detector, expect in ((cluster.nonemptiness_detector(witness), k > 0),
                                 (cluster.uniqueness_detector(witness), k == 1)):
            p = detector.path_len(x)
            if p > 14:
                continue
            acc = [w for w in words(p) if detector.accept(x, w)]
            assert len(acc) <= 1
            assert bool(acc) == expect


@pytest.mark.parametrize("name", sorted(cluster.MACHINE_BOUNDS))
def test_almost_unique_transform_on_bounded_machines(name):
    bound = cluster.MACHINE_BOUNDS[name]
    witness = cluster.shortlex_witness(cluster.machine(name))
    m = cluster.cluster_to_almost_unique(witness, lambda n: bound(n) + 2)

    def count(x):
        return sum(witness.machine.accept(x, w) for w in words(witness.machine.path_len(x)))

    assert cluster.almost_unique_check(m, count, words_up_to(2)) == []


def test_almost_unique_transform_on_interval_orders():
    triple = catalog.build_triple("fp-order", "ones-count")
    m = cluster.cluster_to_almost_unique(cluster.ift_to_cluster(triple), lambda n: n + 2)
    for x in words_up_to(2):
        paths = cluster.acc_set(m, x)
        f = eval_triple(triple, x)
        assert f == x.count("1")
        assert [m.output(x, w) for w in paths] == ([f] if f else [])


def test_unknown_machine():
    with pytest.raises(UnknownInstance):
        cluster.machine("nope")
