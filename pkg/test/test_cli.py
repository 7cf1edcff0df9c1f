import argparse
import json
import pyfgs as fgs
import pyfgs.cli as cli
import pytest as pt


@pt.fixture
def table_file(tmp_path, monkeypatch):
    monkeypatch.setenv('PYFGS_THREADS', '1')
    path = tmp_path / 'table5.fgt'
    assert cli.run(['-q', 'build', '--max-qubits', '5', '--out', str(path)]) == cli.EXIT_OK
    return path


def write_graph_file(tmp_path, name, graph):
    path = tmp_path / name
    path.write_bytes(fgs.write_graph(graph))
    return str(path)


def test_build_and_stats(table_file, capsys):
    capsys.readouterr()
    assert table_file.exists()
    assert cli.run(['-q', 'stats', '--table', str(table_file)]) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['orbits_by_depth'] == {'0': document['orbits_total']}
    assert document['connected_orbits_by_depth'] == {'0': 8}


def test_query(table_file, tmp_path, capsys):
    capsys.readouterr()
    path = write_graph_file(tmp_path, 'p4.g6', fgs.path_graph(4))
    assert cli.run(['-q', 'query', '--table', str(table_file), '--graph', path,
                    '--verify']) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['found']
    assert document['verified']

    path = write_graph_file(tmp_path, 'c5.g6', fgs.cycle_graph(5))
    assert cli.run(['-q', 'query', '--table', str(table_file), '--graph', path]) == \
        cli.EXIT_NOT_FOUND
    document = json.loads(capsys.readouterr().out)
    assert not document['found']
    assert document['graph'] == 'Dhc'


def test_unreadable_input(table_file, tmp_path):
    path = tmp_path / 'bad.g6'
    path.write_bytes(b'B@')
    assert cli.run(['-q', 'query', '--table', str(table_file), '--graph', str(path)]) == \
        cli.EXIT_PARSE_ERROR
    assert cli.run(['-q', 'stats', '--table', str(tmp_path / 'missing.fgt')]) == \
        cli.EXIT_PARSE_ERROR
    assert cli.run(['-q', 'stats', '--table', str(path)]) == cli.EXIT_PARSE_ERROR


def test_build_resource_limit(tmp_path, monkeypatch):
    monkeypatch.setenv('PYFGS_THREADS', '1')
    out = tmp_path / 'table.fgt'
    assert cli.run(['-q', 'build', '--max-qubits', '6', '--out', str(out), '--max-graphs',
                    '5']) == cli.EXIT_RESOURCE_LIMIT
    assert not out.exists()
    assert (tmp_path / 'table.fgt.partial').exists()


def test_bounds(tmp_path, capsys):
    path = write_graph_file(tmp_path, 'c5.g6', fgs.cycle_graph(5))
    assert cli.run(['-q', 'bounds', '--graph', path, '--ns', '--climb', '2']) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['ns_min']['value'] == 2
    assert document['ns_min']['exact']
    assert document['climb']['value'] == 0
    assert cli.run(['-q', 'bounds', '--graph', path, '--subgraph-lb']) == cli.EXIT_PARSE_ERROR


def test_codes_eval(tmp_path, capsys):
    path = write_graph_file(tmp_path, 'p2.g6', fgs.path_graph(2))
    plot = tmp_path / 'curves.png'
    assert cli.run(['-q', 'codes', 'eval', '--graph', path, '--delta', '0', '--plot',
                    str(plot)]) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['threshold'] == 0
    assert document['num_qubits'] == 1
    assert plot.exists()


def test_codes_search(table_file, capsys):
    capsys.readouterr()
    assert cli.run(['-q', 'codes', 'search', '--table', str(table_file), '--max-nodes', '4',
                    '--budget', '0', '--limit', '2']) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert len(document) == 2
    assert document[0]['threshold'] >= document[1]['threshold']


def test_config_from_args():
    args = argparse.Namespace(command='stats', table='t.fgt', connected_only=False,
                              deep_check=False, verbose=0, quiet=1)
    config = cli.CliConfig.from_args(args, environ={'PYFGS_THREADS': '3'})
    assert config.threads == 3
    assert config.verbosity == -1
    assert cli.CliConfig.from_args(args, environ={}).threads == 1
    with pt.raises(ValueError):
        cli.CliConfig('build', max_qubits=0)
    with pt.raises(ValueError):
        cli.CliConfig('stats', threads=0)
    assert cli.CliConfig('bounds', graph='g').ns
