from revision.cli import LabCommand


class Command(LabCommand):
    help = "Relèvement de la relation extraite en préordre total"
    command_name = "lift"
