from runs.exporters import WarningLog, sidecar, wavefunction_frame, wigner_frame, write_frame, write_json
from runs.management.base import RunCommand
from wigner import total_probability, wigner_box_field


class Command(RunCommand):
    help = 'Write W(x, p, t) and the wavefunction on the configured grid, one CSV each per time plus a JSON sidecar'

    def execute_run(self, run, *args, **options):
        files, normalization = [], []
        # psi carries s^(-n/2) so |psi|^2 integrates to one over the billiard
        amplitude = run.scaling.factor ** (-0.5 * run.grid.dim)
        with WarningLog() as caught:
            for index, t in enumerate(run.times):
                t_ref = run.reference_time(t)
                field = wigner_box_field(run.state, run.reference_grid, t_ref)
                normalization.append(total_probability(field))
                path = write_frame(wigner_frame(run.grid, field.values), run.out_dir / f"wigner_{index:03d}.csv")
                psi = amplitude * run.state.psi(run.reference_grid.x_points(), t_ref)
                files += [path, write_frame(wavefunction_frame(run.grid, psi), run.out_dir / f"psi_{index:03d}.csv")]
                self.stdout.write(f"t={t:g}: {path} (integral of W = {normalization[-1]:.10f})")

            write_json(sidecar(run, 'wigner', files, {'normalization': normalization}, caught),
                       run.out_dir / 'wigner.json')
        self.stdout.write(self.style.SUCCESS(f"Wrote {len(run.times)} Wigner fields to {run.out_dir}"))
