import matplotlib
matplotlib.use('Agg')
import pyfgs as fgs


def test_plot_loss_curves(tmp_path):
    code, _ = fgs.best_code(fgs.cycle_graph(6), 0)
    file_name = tmp_path / 'curves.png'
    fgs.plot_loss_curves(fgs.loss_curves(code), title='C6', file_name=str(file_name),
                         halt=False)
    assert file_name.exists()


def test_plot_height_profile(tmp_path):
    profile = fgs.height_profile(fgs.cycle_graph(5), range(5))
    file_name = tmp_path / 'profile.png'
    fgs.plot_height_profile(profile, baseline=2, file_name=str(file_name), halt=False)
    assert file_name.exists()


def test_draw_graph(tmp_path):
    file_name = tmp_path / 'cube.png'
    fgs.draw_graph(fgs.cube_graph(), highlight=(0, 7), title='cube', file_name=str(file_name),
                   halt=False)
    assert file_name.exists()


def test_draw_protocol(table7, tmp_path):
    protocol = fgs.construct(table7, fgs.cycle_graph(5))
    file_name = tmp_path / 'protocol.png'
    axes = fgs.draw_protocol(protocol, file_name=str(file_name), halt=False)
    assert len(axes) >= 2
    assert file_name.exists()
