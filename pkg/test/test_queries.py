import json
import pyfgs as fgs
import pytest as pt


def test_lookup(table7):
    orbit_id, position, vertex_map = fgs.lookup(table7, fgs.path_graph(4))
    assert table7.orbits[orbit_id].depth == 0
    member = table7.orbits[orbit_id].members[position]
    assert member.relabel(vertex_map) == fgs.path_graph(4)
    assert fgs.lookup(table7, fgs.cycle_graph(9)) is None


def test_construct_cycle(table7):
    cycle = fgs.cycle_graph(5)
    protocol = fgs.construct(table7, cycle)
    assert protocol.depth == 1
    assert protocol.initial.n == 7
    assert protocol.initial.is_caterpillar_forest()
    assert protocol.final_graph().relabel(protocol.final_map) == cycle
    assert fgs.replay_verify(protocol, cycle)


def test_construct_depth_zero():
    table = fgs.build(4)
    protocol = fgs.construct(table, fgs.complete_graph(4))
    assert protocol.initial == fgs.star_graph(3)
    assert protocol.steps == [fgs.LCStep(0)]
    assert str(protocol) == 'LC(0)'
    assert fgs.replay_verify(protocol, fgs.complete_graph(4))


def test_construct_single_vertex():
    table = fgs.build(1)
    protocol = fgs.construct(table, fgs.empty_graph(1))
    assert protocol.steps == []
    assert protocol.depth == 0
    assert str(protocol) == 'no steps'
    assert fgs.replay_verify(protocol, fgs.empty_graph(1))


def test_construct_all_members(table5, table7):
    for table in (table5, table7):
        for orbit in table.orbits:
            if orbit.depth == 0 and orbit.num_vertices > 5:
                continue
            for member in orbit.members:
                protocol = fgs.construct(table, member)
                assert protocol.depth == orbit.depth
                assert protocol.final_graph().relabel(protocol.final_map) == member
                assert fgs.replay_verify(protocol, member)


def test_construct_relabeled_target(table7):
    target = fgs.cycle_graph(5).relabel(fgs.VertexMap([4, 2, 0, 3, 1]))
    target = fgs.local_complement(target, 3)
    protocol = fgs.construct(table7, target)
    assert protocol.depth == 1
    assert fgs.replay_verify(protocol, target)


def test_not_in_table(table5):
    with pt.raises(fgs.NotInTablebaseError):
        fgs.construct(table5, fgs.cycle_graph(5))
    with pt.raises(KeyError):
        fgs.construct(table5, fgs.cycle_graph(5))


def test_replay_detects_corrupted_step():
    table = fgs.build(4)
    target = fgs.complete_graph(4)
    protocol = fgs.construct(table, target)
    corrupted = fgs.ConstructionProtocol(protocol.initial, [fgs.LCStep(1)], protocol.final_map)
    outcome = fgs.replay_verify(corrupted, target)
    assert not outcome
    assert outcome.step == 1
    assert outcome.message


def test_replay_detects_wrong_target(table7):
    protocol = fgs.construct(table7, fgs.cycle_graph(5))
    outcome = fgs.replay_verify(protocol, fgs.path_graph(5))
    assert not outcome
    assert outcome.step == len(protocol.steps)


def test_replay_rejects_non_caterpillar_start():
    protocol = fgs.ConstructionProtocol(fgs.cycle_graph(5), [], fgs.VertexMap.identity(5))
    outcome = fgs.replay_verify(protocol, fgs.cycle_graph(5))
    assert not outcome
    assert outcome.step is None


def test_export_import(table7):
    protocol = fgs.construct(table7, fgs.cycle_graph(5))
    data = fgs.export_protocol(protocol)
    document = json.loads(data.decode('utf-8'))
    assert document['depth'] == 1
    assert fgs.read_graph(document['initial']) == protocol.initial
    assert [step['op'] for step in document['steps']].count('FUSE') == 1
    assert fgs.import_protocol(data) == protocol
    assert fgs.import_protocol(data.decode('utf-8')) == protocol


def test_import_errors():
    protocol = fgs.ConstructionProtocol(fgs.star_graph(3), [fgs.LCStep(0)],
                                        fgs.VertexMap.identity(4))
    document = json.loads(fgs.export_protocol(protocol).decode('utf-8'))
    document['depth'] = 2
    with pt.raises(ValueError):
        fgs.import_protocol(json.dumps(document))
    with pt.raises(ValueError):
        fgs.import_protocol(b'{"initial": "C~"}')
    with pt.raises(ValueError):
        fgs.import_protocol(b'{"initial": "C~", "steps": [{"op": "SWAP"}], "map": [0]}')
    with pt.raises(ValueError):
        fgs.import_protocol(b'not json')


def test_fuse_step():
    assert str(fgs.FuseStep(2, 7)) == 'fuse 2 & 7'
    assert not fgs.FuseStep(2, 7).has_frame
    assert fgs.FuseStep(2, 7) == fgs.FuseStep(2, 7, fgs.LocalCliffordFrame.identity(3))
    framed = fgs.FuseStep(2, 7, fgs.LocalCliffordFrame.from_words(3, {0: 'H'}))
    assert framed.has_frame
    assert framed != fgs.FuseStep(2, 7)


@pt.mark.huge
def test_crazy_graph_needs_one_fusion():
    table = fgs.build(13)
    crazy = fgs.crazy_graph(3, 3)
    protocol = fgs.construct(table, crazy)
    assert protocol.depth == 1
    assert fgs.replay_verify(protocol, crazy)


@pt.mark.huge
def test_repeater_graph_needs_two_fusions():
    table = fgs.build(14)
    repeater = fgs.repeater_graph(5)
    protocol = fgs.construct(table, repeater)
    assert protocol.depth == 2
    assert len(protocol.initial.components()) >= 2
    assert fgs.replay_verify(protocol, repeater)


@pt.mark.slow
def test_two_layer_crazy_graphs_need_no_fusion(table8):
    graphs = [fgs.crazy_graph(1, width) for width in range(1, 7)]
    graphs += [fgs.crazy_graph(2, 2), fgs.crazy_graph(2, 3)]
    for graph in graphs:
        protocol = fgs.construct(table8, graph)
        assert protocol.depth == 0
        assert fgs.replay_verify(protocol, graph)


@pt.mark.slow
def test_smallest_orbit_needing_one_fusion(table8):
    sizes = [orbit.num_vertices for orbit in table8.orbits if orbit.depth == 1]
    assert min(sizes) == 5
    smallest = [orbit for orbit in table8.orbits if orbit.depth == 1 and orbit.num_vertices == 5]
    assert len(smallest) == 1
    assert fgs.lc_equivalent(smallest[0].members[0], fgs.cycle_graph(5))


@pt.mark.slow
def test_small_repeater_graph_needs_one_fusion(table10):
    repeater = fgs.repeater_graph(4)
    protocol = fgs.construct(table10, repeater)
    assert protocol.depth == 1
    assert protocol.initial.n == 10
    # starts from detached caterpillars
    assert len(protocol.initial.components()) >= 2
    assert fgs.replay_verify(protocol, repeater)
