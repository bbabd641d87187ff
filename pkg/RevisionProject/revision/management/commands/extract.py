from revision.cli import LabCommand


class Command(LabCommand):
    help = "Relation extraite d'un opérateur pour une base K"
    command_name = "extract"
