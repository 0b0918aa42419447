"""
워터마크 컨트롤러 - embed / detect / remove / evaluate / sweep / pipeline 명령 관리

모든 명령은 새 실행 디렉토리 runs/<timestamp>-<command>/ 에 산출물과
manifest.json (설정 스냅샷, 시드, 입력/산출물 sha256) 을 남기며
입력 파일은 수정하지 않는다.
"""

import os
import traceback
from contextlib import contextmanager
from datetime import datetime
from typing import Any, Dict, Iterator, Optional, Tuple

import torch
import torch.nn as nn

from ..Config import config, ExperimentConfig, EvalSection
from ..Entity import (
    ImageBatch,
    WatermarkSpec,
    TriggerPattern,
    TrainConfig,
    WatermarkedModel,
    GanLossWeights,
    DetectionReport,
    RemovalConfig,
    RemovalOutcome,
    EvaluationReport,
    PerturbationTable,
    SweepCell,
    SweepTable,
    ArtifactRecord,
    RunManifest
)
from ..IService import IUIService
from ..Service import (
    DataService,
    ModelService,
    EmbedService,
    DetectService,
    RemoveService,
    EvalService,
    energy_fraction_in_region
)
from ..UI import TerminalUIService
from ..Utils import (
    FileManager,
    get_logger,
    seed_everything,
    WmForgeError,
    DetectionRefusedError,
    IncompleteReportError
)
from ..Utils.image_io import save_png

logger = get_logger(__name__)

COMMANDS = ('embed', 'detect', 'remove', 'evaluate', 'sweep', 'pipeline')

# 역추적 트리거가 제거 전 모델에서 대상 클래스를 발동시켜야 하는 최소 비율
MIN_FIRE_RATE = 0.9


class RunContext:
    """실행 디렉토리 하나와 그 매니페스트"""

    def __init__(self, manifest: RunManifest):
        self.manifest = manifest

    @property
    def run_dir(self) -> str:
        return self.manifest.run_dir

    def path(self, *parts: str) -> str:
        full = os.path.join(self.run_dir, *parts)
        FileManager.ensure_directory(os.path.dirname(full))
        return full

    def add_input(self, role: str, path: Optional[str]) -> None:
        if path:
            self.manifest.inputs.append(_record(role, path))

    def add_artifact(self, role: str, path: Optional[str]) -> Optional[str]:
        if path and os.path.exists(path):
            self.manifest.artifacts.append(_record(role, path))
            logger.debug(f"산출물 기록: {role} -> {path}")
        return path

    def save_json(self, role: str, data: Dict[str, Any], *parts: str) -> str:
        return self.add_artifact(role, FileManager.save_json(data, self.path(*parts)))

    def save_text(self, role: str, text: str, *parts: str) -> str:
        path = self.path(*parts)
        FileManager.safe_write(path, text)
        return self.add_artifact(role, path)


def _record(role: str, path: str) -> ArtifactRecord:
    return ArtifactRecord(role=role, path=path, sha256=FileManager.sha256_file(path), size=os.path.getsize(path))


def _resolve_relative(path: Optional[str], anchor_file: str) -> Optional[str]:
    """보고서에 기록된 경로를 현재 위치 또는 보고서 위치 기준으로 찾기"""
    if not path:
        return None
    if os.path.exists(path):
        return path
    anchor = os.path.dirname(os.path.abspath(anchor_file))
    for candidate in (os.path.join(anchor, path), os.path.join(anchor, 'triggers', os.path.basename(path))):
        if os.path.exists(candidate):
            return candidate
    raise FileNotFoundError(path)


class WatermarkController:
    """워터마크 실험 컨트롤러"""

    def __init__(
        self,
        ui_service: Optional[IUIService] = None,
        data_service: Optional[DataService] = None,
        model_service: Optional[ModelService] = None,
        detect_service: Optional[DetectService] = None,
        runs_dir: Optional[str] = None
    ):
        self.ui_service = ui_service or TerminalUIService()
        self.data_service = data_service or DataService()
        self.model_service = model_service or ModelService()
        defaults = EvalSection()
        self._configure_evaluation(defaults.exclude_target_class, defaults.batch_size)
        self.detect_service = detect_service or DetectService()
        self.remove_service = RemoveService(self.data_service, self.model_service)
        self.runs_dir = runs_dir or config.runtime.runs_dir

        logger.info("WatermarkController가 초기화되었습니다.")

    # ------------------------------------------------------------------
    # 공통
    # ------------------------------------------------------------------

    def execute(self, command: str, **kwargs) -> int:
        """명령 실행 후 종료 코드 반환 (0 성공, 2 검증 오류, 1 실행 실패)"""
        if command not in COMMANDS:
            self.ui_service.display_error(f"unknown command '{command}'")
            return 2
        try:
            getattr(self, f"cmd_{command}")(**kwargs)
            return 0
        except WmForgeError as e:
            self.ui_service.display_error(str(e))
            return e.exit_code
        except FileNotFoundError as e:
            self.ui_service.display_error(f"file not found: {e.filename or e}")
            return 1
        except KeyboardInterrupt:
            self.ui_service.display_warning("사용자에 의해 중단되었습니다.")
            return 1
        except Exception as e:
            logger.error(f"예상치 못한 오류: {e}\n{traceback.format_exc()}")
            self.ui_service.display_error(f"unexpected failure: {e}")
            return 1
        finally:
            self.ui_service.finish_task()

    def _configure_evaluation(self, exclude_target_class: bool, batch_size: int) -> None:
        """평가 서비스를 실험 설정에 맞춰 다시 구성 (삽입 서비스도 같은 평가 서비스 사용)"""
        self.eval_service = EvalService(self.data_service, self.model_service,
                                        exclude_target_class=exclude_target_class, batch_size=batch_size)
        self.embed_service = EmbedService(self.data_service, self.model_service, self.eval_service)

    def _load_config(self, config_path: str, seed: Optional[int]) -> ExperimentConfig:
        experiment = ExperimentConfig.load(config_path).with_seed(seed)
        seed_everything(experiment.seed)
        self._configure_evaluation(experiment.eval.exclude_target_class, experiment.eval.batch_size)
        return experiment

    @contextmanager
    def _run(self, command: str, experiment: ExperimentConfig, out: Optional[str],
             inputs: Dict[str, Optional[str]]) -> Iterator[RunContext]:
        """실행 디렉토리 생성, 종료 시 (실패 포함) 매니페스트 기록"""
        run_dir = FileManager.create_run_directory(out or self.runs_dir, command)
        snapshot = experiment.to_dict()
        run = RunContext(RunManifest(
            command=command,
            config=snapshot,
            config_digest=FileManager.sha256_json(snapshot),
            seeds={"seed": experiment.seed},
            run_dir=run_dir
        ))
        for role, path in inputs.items():
            run.add_input(role, path)
        self.ui_service.display_banner(command, run_dir)

        try:
            yield run
            run.manifest.status = "completed"
        except BaseException as e:
            run.manifest.status = f"failed: {type(e).__name__}: {e}"
            raise
        finally:
            run.manifest.finished_at = datetime.now()
            FileManager.save_json(run.manifest.to_dict(), os.path.join(run_dir, "manifest.json"))
            if run.manifest.status == "completed":
                self.ui_service.display_manifest(run.manifest)

    def _epoch_progress(self, description: str, total: int):
        self.ui_service.start_task(description, total)

        def on_epoch(epoch: int, epochs: int, loss: float, accuracy: float) -> None:
            self.ui_service.advance_task(f"loss {loss:.4f} acc {accuracy:.2%}")

        return on_epoch

    def _load_splits(self, experiment: ExperimentConfig) -> Tuple[ImageBatch, ImageBatch]:
        name = experiment.dataset.name
        train = self.data_service.load_dataset(name, 'train')
        test = self.data_service.load_dataset(name, 'test')
        return train, test

    def _build_spec(self, experiment: ExperimentConfig) -> WatermarkSpec:
        trigger = self.data_service.build_trigger(experiment.trigger, experiment.image_shape)
        return WatermarkSpec(trigger=trigger,
                             target_class=experiment.embed.target_class,
                             poison_rate=experiment.embed.poison_rate)

    def _load_model(self, model_path: str, experiment: ExperimentConfig) -> nn.Module:
        return self.model_service.load_checkpoint(model_path, expected_architecture=experiment.architecture)

    def _load_report(self, report_path: str) -> DetectionReport:
        return DetectionReport.from_dict(FileManager.load_json(report_path))

    # ------------------------------------------------------------------
    # 단계 (실행 디렉토리 안에서 동작)
    # ------------------------------------------------------------------

    def _embed_step(self, experiment: ExperimentConfig, run: RunContext, prefix: str = "") -> WatermarkedModel:
        train, test = self._load_splits(experiment)
        train = self.data_service.limit(train, experiment.dataset.train_limit, experiment.seed)
        spec = self._build_spec(experiment)
        cfg = TrainConfig(
            epochs=experiment.embed_epochs,
            batch_size=experiment.embed.batch_size,
            learning_rate=experiment.embed.learning_rate,
            seed=experiment.seed,
            optimizer=experiment.embed.optimizer
        )

        on_epoch = self._epoch_progress("워터마크 삽입 학습", cfg.epochs)
        watermarked = self.embed_service.embed_watermark(
            train, test, spec, cfg, experiment.architecture, experiment.embed.min_retention, on_epoch,
            exclude_target_class=experiment.eval.exclude_target_class)
        self.ui_service.finish_task()

        checkpoint = self.model_service.save_checkpoint(
            watermarked.model, run.path(prefix, "watermarked_model.pt"), seed=experiment.seed)
        watermarked.checkpoint_path = run.add_artifact("checkpoint", checkpoint)
        run.add_artifact("spec", spec.save(run.path(prefix, "watermark_spec.pt")))
        run.add_artifact("trigger_png", save_png(spec.trigger.stencil, run.path(prefix, "trigger.png"), scale=4))

        sidecar = watermarked.sidecar()
        sidecar["config_digest"] = run.manifest.config_digest
        run.save_json("sidecar", sidecar, prefix, "watermarked_model.json")

        self.ui_service.display_success(
            f"워터마크 삽입 완료: accuracy {watermarked.basic_accuracy:.2%}, "
            f"retention {watermarked.basic_retention:.2%}")
        return watermarked

    def _detect_step(self, model: nn.Module, experiment: ExperimentConfig, run: RunContext,
                     prefix: str = "") -> Tuple[DetectionReport, PerturbationTable]:
        detect = experiment.detect
        source = self.data_service.load_dataset(experiment.dataset.name, detect.source_split)
        attacker = self.data_service.attacker_set(source, detect.attacker_set_size, experiment.seed)
        weights = GanLossWeights(detect.lambda1, detect.lambda2)

        num_classes = getattr(model, 'num_classes', experiment.num_classes)
        self.ui_service.start_task("클래스별 트리거 역추적", num_classes)

        def on_class(result) -> None:
            status = f"class {result.assumed_class}: " + (
                f"{result.mean_pert_size:.3f}" if result.complete else "failed")
            self.ui_service.advance_task(status)

        report = self.detect_service.detect_watermark(
            model, attacker, detect.threshold, weights, detect,
            seed=experiment.seed, out_dir=run.path(prefix, "triggers", ""), on_class=on_class)
        self.ui_service.finish_task()

        for result in report.per_class:
            for role, path in (("generator", result.generator_ckpt), ("reversed_trigger", result.trigger_path),
                               ("reversed_trigger_png", result.trigger_png_path),
                               ("perturbation", result.perturbation_path)):
                run.add_artifact(f"{role}_class{result.assumed_class}", path)

        table = self.eval_service.perturbation_table(report)
        run.save_json("detection_report", report.to_dict(), prefix, "detection_report.json")
        run.save_text("perturbation_table_csv", table.to_csv(), prefix, "perturbation_table.csv")
        run.save_text("perturbation_table_txt", table.to_text(), prefix, "perturbation_table.txt")
        self.ui_service.display_detection(report, table)

        if len(report.incomplete_classes) == len(report.per_class):
            raise IncompleteReportError("reversing failed for every class; see the log for per-class errors")
        return report, table

    def _reversed_trigger(self, report: DetectionReport, report_path: Optional[str]) -> TriggerPattern:
        """탐지된 클래스의 역추적 트리거 (메모리 또는 파일)"""
        if not report.detected:
            raise DetectionRefusedError(
                "the detection report found no watermark (detected=false); "
                "an attacker leaves an unwatermarked model unchanged, so nothing was removed")
        result = report.result_for(report.detected_class)
        if result is not None and result.best_trigger is not None:
            return result.best_trigger
        if result is None or not result.trigger_path:
            raise IncompleteReportError(f"no reversed trigger recorded for class {report.detected_class}")
        return TriggerPattern.load(_resolve_relative(result.trigger_path, report_path or "."))

    def _removal_config(self, experiment: ExperimentConfig, data_fraction: Optional[float] = None,
                        epochs: Optional[int] = None) -> RemovalConfig:
        remove = experiment.remove
        return RemovalConfig(
            data_fraction=remove.data_fraction if data_fraction is None else data_fraction,
            epochs=remove.epochs if epochs is None else epochs,
            learning_rate=remove.learning_rate,
            mix_clean=remove.mix_clean,
            seed=experiment.seed,
            batch_size=remove.batch_size,
            optimizer=remove.optimizer
        )

    def _retention(self, model: nn.Module, test: ImageBatch, spec: Optional[WatermarkSpec],
                   trigger: TriggerPattern, detected_class: int, experiment: ExperimentConfig) -> float:
        """실제 명세가 있으면 그것으로, 없으면 역추적 트리거로 유지율 측정"""
        exclude = experiment.eval.exclude_target_class
        if spec is not None:
            return self.eval_service.retention_rate(model, test, spec, exclude)
        proxy = WatermarkSpec(trigger=trigger, target_class=detected_class, poison_rate=0.0)
        return self.eval_service.retention_rate(model, test, proxy, exclude)

    def _remove_step(self, model: nn.Module, report: DetectionReport, report_path: Optional[str],
                     experiment: ExperimentConfig, run: RunContext, spec: Optional[WatermarkSpec],
                     prefix: str = "") -> Tuple[nn.Module, EvaluationReport]:
        trigger = self._reversed_trigger(report, report_path)
        detected_class = report.detected_class
        cfg = self._removal_config(experiment)

        train, test = self._load_splits(experiment)
        clean_subset = self.data_service.subsample(train, cfg.data_fraction, experiment.seed)

        pre_accuracy = self.eval_service.test_accuracy(model, test)
        pre_retention = self._retention(model, test, spec, trigger, detected_class, experiment)
        unlearn = self.remove_service.build_unlearn_set(clean_subset, trigger)
        fire_rate = self.eval_service.fire_rate(model, unlearn, detected_class)
        if fire_rate < MIN_FIRE_RATE:
            self.ui_service.display_warning(
                f"역추적 트리거가 제거 전 모델에서 클래스 {detected_class} 를 {fire_rate:.1%} 만 발동시킵니다.")

        on_epoch = self._epoch_progress("unlearning 미세조정", cfg.epochs)
        cleaned, history = self.remove_service.remove_watermark(model, clean_subset, trigger, cfg, on_epoch)
        self.ui_service.finish_task()

        post_accuracy = self.eval_service.test_accuracy(cleaned, test)
        post_retention = self._retention(cleaned, test, spec, trigger, detected_class, experiment)

        checkpoint = self.model_service.save_checkpoint(cleaned, run.path(prefix, "cleaned_model.pt"),
                                                        seed=experiment.seed)
        run.add_artifact("cleaned_checkpoint", checkpoint)
        outcome = RemovalOutcome(
            config=cfg,
            pre_accuracy=pre_accuracy,
            post_accuracy=post_accuracy,
            pre_retention=pre_retention,
            post_retention=post_retention,
            reversed_trigger_fire_rate=fire_rate,
            detected_class=detected_class,
            history=history
        )
        run.save_json("removal_sidecar", outcome.to_dict(), prefix, "cleaned_model.json")

        evaluation = EvaluationReport(
            basic_accuracy=pre_accuracy,
            basic_retention=pre_retention,
            post_accuracy=post_accuracy,
            post_retention=post_retention,
            dataset=experiment.dataset.name,
            watermark_type=spec.trigger.name.value if spec is not None else experiment.trigger.name,
            config_digest=run.manifest.config_digest,
            extras={
                "retention_source": "watermark_spec" if spec is not None else "reversed_trigger",
                "detected_class": detected_class,
                "reversed_trigger_fire_rate": fire_rate
            }
        )
        self._write_evaluation(evaluation, run, experiment, prefix, report=report)
        return cleaned, evaluation

    def _write_evaluation(self, evaluation: EvaluationReport, run: RunContext, experiment: ExperimentConfig,
                          prefix: str = "", report: Optional[DetectionReport] = None) -> None:
        run.save_json("evaluation_json", evaluation.to_dict(), prefix, "evaluation.json")
        run.save_text("evaluation_csv", evaluation.to_csv(), prefix, "evaluation.csv")
        if experiment.eval.html:
            table = self.eval_service.perturbation_table(report) if report is not None else None
            pngs = {}
            if report is not None:
                pngs = {r.assumed_class: r.trigger_png_path for r in report.per_class
                        if r.trigger_png_path and os.path.exists(r.trigger_png_path)}
            page = self.eval_service.render_html(evaluation, table, pngs)
            run.save_text("summary_html", page, prefix, "summary.html")
        self.ui_service.display_evaluation(evaluation)

    # ------------------------------------------------------------------
    # 명령
    # ------------------------------------------------------------------

    def cmd_embed(self, config_path: str, seed: Optional[int] = None, out: Optional[str] = None,
                  **_: Any) -> WatermarkedModel:
        """워터마크 삽입 -> 체크포인트 + 사이드카 + 매니페스트"""
        experiment = self._load_config(config_path, seed)
        with self._run('embed', experiment, out, {"config": config_path}) as run:
            return self._embed_step(experiment, run)

    def cmd_detect(self, config_path: str, model_path: str, seed: Optional[int] = None,
                   out: Optional[str] = None, **_: Any) -> DetectionReport:
        """탐지 -> JSON 보고서 + 클래스별 트리거 PNG + 섭동 표"""
        experiment = self._load_config(config_path, seed)
        model = self._load_model(model_path, experiment)
        with self._run('detect', experiment, out, {"config": config_path, "model": model_path}) as run:
            report, _ = self._detect_step(model, experiment, run)
            return report

    def cmd_remove(self, config_path: str, model_path: str, report_path: str, spec_path: Optional[str] = None,
                   seed: Optional[int] = None, out: Optional[str] = None, **_: Any) -> EvaluationReport:
        """unlearning 제거 -> 정리된 체크포인트 + 전후 평가"""
        experiment = self._load_config(config_path, seed)
        report = self._load_report(report_path)
        # 탐지 실패 보고서는 실행 디렉토리를 만들기 전에 거부
        self._reversed_trigger(report, report_path)
        model = self._load_model(model_path, experiment)
        spec = WatermarkSpec.load(spec_path) if spec_path else None

        inputs = {"config": config_path, "model": model_path, "report": report_path, "spec": spec_path}
        with self._run('remove', experiment, out, inputs) as run:
            _, evaluation = self._remove_step(model, report, report_path, experiment, run, spec)
            return evaluation

    def cmd_evaluate(self, config_path: str, model_path: str, spec_path: str, report_path: Optional[str] = None,
                     seed: Optional[int] = None, out: Optional[str] = None, **_: Any) -> EvaluationReport:
        """모델 + 명세 -> 정확도 / 유지율 (보고서가 있으면 트리거 국소화 포함)"""
        experiment = self._load_config(config_path, seed)
        model = self._load_model(model_path, experiment)
        spec = WatermarkSpec.load(spec_path)

        inputs = {"config": config_path, "model": model_path, "spec": spec_path, "report": report_path}
        with self._run('evaluate', experiment, out, inputs) as run:
            test = self.data_service.load_dataset(experiment.dataset.name, 'test')
            extras: Dict[str, Any] = {}
            report = None
            if report_path:
                report = self._load_report(report_path)
                extras.update(self._localization(report, report_path, spec))

            evaluation = EvaluationReport(
                basic_accuracy=self.eval_service.test_accuracy(model, test),
                basic_retention=self.eval_service.retention_rate(
                    model, test, spec, experiment.eval.exclude_target_class),
                dataset=experiment.dataset.name,
                watermark_type=spec.trigger.name.value,
                config_digest=run.manifest.config_digest,
                extras=extras
            )
            self._write_evaluation(evaluation, run, experiment, report=report)
            return evaluation

    def _localization(self, report: DetectionReport, report_path: Optional[str],
                      spec: WatermarkSpec) -> Dict[str, Any]:
        """탐지된 클래스의 최소 섭동이 실제 트리거 사분면에 얼마나 몰려 있는지"""
        if not report.detected:
            return {}
        result = report.result_for(report.detected_class)
        perturbation = result.best_perturbation if result is not None else None
        if perturbation is None and result is not None and result.perturbation_path:
            perturbation = torch.load(_resolve_relative(result.perturbation_path, report_path or "."),
                                      map_location='cpu')
        if perturbation is None:
            return {}
        return {
            "detected_class": report.detected_class,
            "detected_matches_target": report.detected_class == spec.target_class,
            "trigger_energy_fraction": energy_fraction_in_region(perturbation, spec.trigger),
            "separation_ratio": report.separation_ratio(spec.target_class)
        }

    def cmd_sweep(self, config_path: str, model_path: str, report_path: str, spec_path: str,
                  seed: Optional[int] = None, out: Optional[str] = None, **_: Any) -> SweepTable:
        """데이터 비율 x 에폭 격자 위에서 제거를 반복"""
        experiment = self._load_config(config_path, seed)
        report = self._load_report(report_path)
        trigger = self._reversed_trigger(report, report_path)
        model = self._load_model(model_path, experiment)
        spec = WatermarkSpec.load(spec_path)

        inputs = {"config": config_path, "model": model_path, "report": report_path, "spec": spec_path}
        with self._run('sweep', experiment, out, inputs) as run:
            train, test = self._load_splits(experiment)
            fractions = experiment.remove.sweep_fractions
            epochs_grid = experiment.remove.sweep_epochs
            table = SweepTable(fractions=list(fractions), epochs=list(epochs_grid),
                               watermark_type=spec.trigger.name.value)

            self.ui_service.start_task("제거 스윕", len(fractions) * len(epochs_grid))
            for fraction in fractions:
                clean_subset = self.data_service.subsample(train, fraction, experiment.seed)
                for epochs in epochs_grid:
                    cfg = self._removal_config(experiment, data_fraction=fraction, epochs=epochs)
                    cleaned, _ = self.remove_service.remove_watermark(model, clean_subset, trigger, cfg)
                    cell = SweepCell(
                        data_fraction=fraction,
                        epochs=epochs,
                        accuracy=self.eval_service.test_accuracy(cleaned, test),
                        retention=self.eval_service.retention_rate(
                            cleaned, test, spec, experiment.eval.exclude_target_class)
                    )
                    table.cells.append(cell)
                    self.ui_service.advance_task(
                        f"{fraction:.0%}/{epochs}ep: ret {cell.retention:.2%}")
            self.ui_service.finish_task()

            summary = table.to_dict()
            summary["retention_non_increasing_in_epochs"] = table.retention_non_increasing_in_epochs()
            summary["retention_non_decreasing_as_data_shrinks"] = {
                str(e): table.retention_non_decreasing_as_data_shrinks(e) for e in epochs_grid}
            run.save_json("sweep_json", summary, "sweep.json")
            run.save_text("sweep_csv", table.to_csv(), "sweep.csv")
            run.save_text("sweep_txt", table.to_text(), "sweep.txt")
            self.ui_service.display_sweep(table)
            return table

    def cmd_pipeline(self, config_path: str, seed: Optional[int] = None, out: Optional[str] = None,
                     **_: Any) -> Dict[str, Any]:
        """삽입 -> 탐지 -> 제거 -> 평가를 한 실행 디렉토리에서"""
        experiment = self._load_config(config_path, seed)
        with self._run('pipeline', experiment, out, {"config": config_path}) as run:
            watermarked = self._embed_step(experiment, run, prefix="embed")
            report, _ = self._detect_step(watermarked.model, experiment, run, prefix="detect")

            localization = self._localization(report, None, watermarked.spec)
            if localization:
                run.save_json("localization", localization, "detect", "localization.json")

            results = {
                "watermarked": watermarked,
                "report": report,
                "cleaned": None,
                "evaluation": None,
                "localization": localization,
                "removal_skipped": not report.detected
            }
            # 탐지 실패: 공격자는 모델을 그대로 둔다
            if not report.detected:
                run.manifest.outcome = "no watermark detected; removal skipped, model left unchanged"
                self.ui_service.display_info("워터마크가 탐지되지 않아 제거 단계를 건너뜁니다. 모델은 변경되지 않았습니다.")
                return results

            results["cleaned"], results["evaluation"] = self._remove_step(
                watermarked.model, report, None, experiment, run, watermarked.spec, prefix="remove")
            return results
